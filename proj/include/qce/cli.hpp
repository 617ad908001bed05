// Copyright 2026 The qce Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line frontend. Exit codes: 0 the property holds (or the value was
// computed), 1 the property fails with a certificate in the report, 2 input
// error. Reports are deterministic: identical inputs give byte-identical
// output unless --timing is requested.

#ifndef QCE_CLI_HPP
#define QCE_CLI_HPP

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qce/io.hpp"

namespace qce {
namespace cli {

namespace detail {

inline double default_tol() {
  if (const char* env = std::getenv("QCE_TOL")) {
    try {
      const double v = std::stod(env);
      if (v > 0.0) return v;
    } catch (...) {
    }
  }
  return kDefaultTol;
}

inline void emit(const Json& report, const std::string& out_path, std::ostream& out) {
  const std::string text = dump_report(report);
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw Error(ErrorCode::ParseError, out_path + ": cannot open for writing");
  f << text;
}

inline Json player_section(std::size_t player, const QceVerdict& verdict) {
  Json violations = Json::array();
  bool ok = true;
  for (const auto& v : verdict.violations) {
    if (v.player != player) continue;
    ok = false;
    violations.push_back(violation_to_json(v));
  }
  return Json{{"player", player + 1}, {"is_qce", ok}, {"violations", violations}};
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"quantum correlated equilibrium analyzer"};
  app.require_subcommand(1);
  app.fallthrough();

  double tol = detail::default_tol();
  std::string out_path;
  bool timing = false;
  app.add_option("--tol", tol, "tolerance for all checks (env QCE_TOL overrides the default)");
  app.add_option("--out", out_path, "write the report to this path instead of stdout");
  app.add_flag("--timing", timing, "include timing_ms in the report");

  std::string game_path, state_path, dist_path, mode = "diag";
  int player_arg = 0;  // 1-based; 0 = all players

  CLI::App* check = app.add_subcommand("check", "decide whether a state is an equilibrium");
  check->add_option("game", game_path, "game file")->required();
  check->add_option("state", state_path, "state file")->required();
  check->add_option("--player", player_arg, "restrict to one player (1-based)");

  CLI::App* deviate = app.add_subcommand("deviate", "construct an explicit profitable deviation");
  deviate->add_option("game", game_path, "game file")->required();
  deviate->add_option("state", state_path, "state file")->required();
  deviate->add_option("--player", player_arg, "player to deviate (1-based)")->required();

  CLI::App* maxgain = app.add_subcommand("maxgain", "maximum gain over POVMs with a dual certificate");
  maxgain->add_option("game", game_path, "game file")->required();
  maxgain->add_option("state", state_path, "state file")->required();
  maxgain->add_option("--player", player_arg, "player to analyze (1-based)")->required();

  CLI::App* bounds = app.add_subcommand("bounds", "upper bounds for the gain and the eps certificate");
  bounds->add_option("game", game_path, "game file")->required();
  bounds->add_option("state", state_path, "state file")->required();
  bounds->add_option("--player", player_arg, "player to analyze (1-based)")->required();

  CLI::App* lift = app.add_subcommand("lift", "embed a classical distribution as a state file");
  lift->add_option("dist", dist_path, "distribution file")->required();
  lift->add_option("--mode", mode, "diag or pure")->check(CLI::IsMember({"diag", "pure"}));

  CLI::App* ce = app.add_subcommand("ce-check", "classical correlated equilibrium check");
  ce->add_option("game", game_path, "game file")->required();
  ce->add_option("dist", dist_path, "distribution file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const detail::Timer timer;
  const auto finish = [&](Json report, int code) {
    if (timing) report["timing_ms"] = timer.elapsed_ms();
    detail::emit(report, out_path, out);
    return code;
  };

  try {
    if (*lift) {
      const ClassicalDistribution p = load_distribution(dist_path);
      const DensityState rho = mode == "pure" ? lift_pure(p) : lift_diagonal(p);
      return finish(state_to_json(rho), 0);
    }
    if (*ce) {
      const StrategicGame game = load_game(game_path);
      const ClassicalDistribution p = load_distribution(dist_path);
      const ClassicalCheckResult res = classical_ce_check(p, game, tol);
      Json report{{"version", "1"}, {"is_ce", res.holds}};
      if (res.witness) {
        report["witness"] = Json{{"player", res.witness->player + 1},
                                 {"from", res.witness->from + 1},
                                 {"to", res.witness->to + 1}};
      }
      return finish(report, res.holds ? 0 : 1);
    }

    const StrategicGame game = load_game(game_path);
    const DensityState rho = load_state(state_path, tol);
    if (rho.dim() != game.joint_strategy_count())
      throw Error(ErrorCode::ParseError,
                  state_path + ": state dimension differs from the game's joint strategy count");
    if (player_arg < 0 || static_cast<std::size_t>(player_arg) > game.player_count())
      throw Error(ErrorCode::ParseError, "--player out of range");

    if (*check) {
      const QceVerdict verdict = check_qce(rho, game, tol);
      Json players = Json::array();
      bool all_ok = true;
      for (std::size_t i = 0; i < game.player_count(); ++i) {
        if (player_arg != 0 && static_cast<std::size_t>(player_arg) != i + 1) continue;
        Json sec = detail::player_section(i, verdict);
        all_ok = all_ok && sec["is_qce"].get<bool>();
        players.push_back(std::move(sec));
      }
      const Json report{{"version", "1"}, {"is_qce", all_ok}, {"players", players}};
      return finish(report, all_ok ? 0 : 1);
    }

    const std::size_t player = static_cast<std::size_t>(player_arg) - 1;

    if (*deviate) {
      const QceVerdict verdict = check_qce(rho, game, tol);
      Json sec = detail::player_section(player, verdict);
      if (sec["is_qce"].get<bool>()) {
        const Json report{{"version", "1"}, {"is_qce", true}, {"players", Json::array({sec})}};
        return finish(report, 1);
      }
      try {
        const Deviation dev = synthesize_best_deviation(rho, game, player, tol);
        sec["deviation"] = deviation_to_json(dev);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotApplicable) throw;
        const Json report{{"version", "1"}, {"is_qce", true}, {"players", Json::array({sec})}};
        return finish(report, 1);
      }
      const Json report{{"version", "1"}, {"is_qce", false}, {"players", Json::array({sec})}};
      return finish(report, 0);
    }

    if (*maxgain || *bounds) {
      const DeviationFamily fam = build_deviation_family(rho, game, player);
      const HermitianConditionResult herm = check_hermitian_condition(fam, tol);
      if (!herm.holds) {
        const Json report{
            {"version", "1"},
            {"error", Json{{"code", "HermitianConditionViolated"},
                           {"pair", Json::array({herm.violating_pair->first + 1,
                                                 herm.violating_pair->second + 1})},
                           {"hint", "run 'deviate' for the unitary route"}}}};
        return finish(report, 1);
      }
      Json gain;
      if (*maxgain) {
        MaxGainOptions opts;
        opts.tol = tol;
        gain = gain_to_json(max_gain(fam, opts));
      } else {
        gain = Json{{"bound_m_lambda", bound_m_lambda(fam, tol)},
                    {"bound_positive_eigs", bound_positive_eigs(fam, tol)},
                    {"epsilon_certificate", epsilon_certificate(fam, tol)}};
      }
      const QceVerdict verdict = check_qce(rho, game, tol);
      Json sec = detail::player_section(player, verdict);
      sec["gain"] = gain;
      const bool ok = sec["is_qce"].get<bool>();
      const Json report{{"version", "1"}, {"is_qce", ok}, {"players", Json::array({sec})}};
      return finish(report, 0);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace cli
}  // namespace qce

#endif  // QCE_CLI_HPP
