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

// File formats and the deterministic report writer.
//
//   game:         {"players": k, "strategies": [n1..nk], "utilities": [[...]]}
//   distribution: {"strategies": [n1..nk], "p": [...]}
//   state:        {"dim": N, "re": [N*N row-major], "im": [N*N row-major]}
//
// Strategy indices in files and reports are 1-based. Floats are written with
// 17 significant digits in lowercase scientific notation so binary64 values
// round-trip exactly and identical inputs produce byte-identical reports.

#ifndef QCE_IO_HPP
#define QCE_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qce/analyzer.hpp"
#include "qce/deviation.hpp"
#include "qce/gain.hpp"
#include "qce/state.hpp"

namespace qce {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

inline void dump_json_to(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  const std::string pad_in(2 * static_cast<std::size_t>(depth + 1), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + Json(it.key()).dump() + ": ";
        dump_json_to(it.value(), out, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_json_to(el, out, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

inline std::string dump_report(const Json& j) {
  std::string out;
  detail::dump_json_to(j, out, 0);
  out += "\n";
  return out;
}

namespace detail {

inline Json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

inline std::vector<std::size_t> read_strategies(const Json& j, const std::string& where) {
  if (!j.contains("strategies") || !j["strategies"].is_array() || j["strategies"].empty())
    throw Error(ErrorCode::ParseError, where + ": field 'strategies' must be a nonempty array");
  std::vector<std::size_t> out;
  for (const auto& el : j["strategies"]) {
    if (!el.is_number_integer() || el.get<long long>() < 1)
      throw Error(ErrorCode::ParseError, where + ": 'strategies' entries must be positive integers");
    out.push_back(el.get<std::size_t>());
  }
  return out;
}

inline std::vector<double> read_double_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, where + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& el : j) {
    if (!el.is_number()) throw Error(ErrorCode::ParseError, where + ": expected an array of numbers");
    out.push_back(el.get<double>());
  }
  return out;
}

}  // namespace detail

inline StrategicGame load_game(const std::string& path) {
  const Json j = detail::parse_file(path);
  const auto strategies = detail::read_strategies(j, path);
  if (j.contains("players")) {
    if (!j["players"].is_number_integer() ||
        j["players"].get<std::size_t>() != strategies.size())
      throw Error(ErrorCode::ParseError,
                  path + ": field 'players' disagrees with the 'strategies' length");
  }
  if (!j.contains("utilities") || !j["utilities"].is_array() ||
      j["utilities"].size() != strategies.size())
    throw Error(ErrorCode::ParseError, path + ": field 'utilities' must hold one tensor per player");
  std::vector<std::vector<double>> utilities;
  const std::size_t total = joint_count(strategies);
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    const std::string where = path + ": utilities[" + std::to_string(i) + "]";
    utilities.push_back(detail::read_double_array(j["utilities"][i], where));
    if (utilities.back().size() != total)
      throw Error(ErrorCode::ParseError,
                  where + " must hold " + std::to_string(total) + " entries");
  }
  try {
    return StrategicGame(strategies, std::move(utilities));
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

inline ClassicalDistribution load_distribution(const std::string& path) {
  const Json j = detail::parse_file(path);
  const auto strategies = detail::read_strategies(j, path);
  if (!j.contains("p"))
    throw Error(ErrorCode::ParseError, path + ": missing field 'p'");
  auto p = detail::read_double_array(j["p"], path + ": p");
  try {
    return ClassicalDistribution(strategies, std::move(p));
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

inline DensityState load_state(const std::string& path, double tol = kDefaultTol) {
  const Json j = detail::parse_file(path);
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() < 1)
    throw Error(ErrorCode::ParseError, path + ": field 'dim' must be a positive integer");
  const std::size_t dim = j["dim"].get<std::size_t>();
  if (!j.contains("re") || !j.contains("im"))
    throw Error(ErrorCode::ParseError, path + ": missing field 're' or 'im'");
  const auto re = detail::read_double_array(j["re"], path + ": re");
  const auto im = detail::read_double_array(j["im"], path + ": im");
  if (re.size() != dim * dim || im.size() != dim * dim)
    throw Error(ErrorCode::ParseError, path + ": 're' and 'im' must each hold dim*dim entries");
  ComplexMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = Complex(re[r * dim + c], im[r * dim + c]);
  try {
    return DensityState(std::move(m), tol);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  return Json{{"re", re}, {"im", im}};
}

inline Json vector_to_json(const CVector& v) {
  Json re = Json::array(), im = Json::array();
  for (const Complex& z : v) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return Json{{"re", re}, {"im", im}};
}

inline Json state_to_json(const DensityState& rho) {
  Json j;
  j["dim"] = rho.dim();
  Json re = Json::array(), im = Json::array();
  for (std::size_t r = 0; r < rho.dim(); ++r)
    for (std::size_t c = 0; c < rho.dim(); ++c) {
      re.push_back(rho.matrix()(r, c).real());
      im.push_back(rho.matrix()(r, c).imag());
    }
  j["re"] = re;
  j["im"] = im;
  return j;
}

inline Json violation_to_json(const QceViolation& v) {
  Json j;
  j["strategy"] = v.strategy + 1;
  j["lambda_max"] = v.lambda_max;
  j["witness"] = vector_to_json(v.witness);
  j["hermitian_condition_violated"] = v.hermitian_condition_violated;
  return j;
}

inline Json povm_to_json(const Povm& p) {
  Json effects = Json::array();
  for (const auto& e : p.effects()) effects.push_back(matrix_to_json(e));
  return Json{{"outcomes", p.outcome_count()}, {"effects", effects}};
}

inline Json deviation_to_json(const Deviation& dev) {
  Json j;
  if (std::holds_alternative<UnitaryDeviation>(dev)) {
    const auto& u = std::get<UnitaryDeviation>(dev);
    j["type"] = "unitary";
    j["pair"] = Json::array({u.pair.first + 1, u.pair.second + 1});
    j["block"] = Json{{"u11", Json{{"re", u.u11.real()}, {"im", u.u11.imag()}}},
                      {"u12", Json{{"re", u.u12.real()}, {"im", u.u12.imag()}}},
                      {"u21", Json{{"re", u.u21.real()}, {"im", u.u21.imag()}}},
                      {"u22", Json{{"re", u.u22.real()}, {"im", u.u22.imag()}}}};
    j["x"] = u.x;
    j["r"] = u.r;
    j["c"] = u.c;
    j["achieved_gain"] = u.achieved_gain;
  } else {
    const auto& p = std::get<PovmDeviation>(dev);
    j["type"] = "povm";
    j["violated_strategy"] = p.violated_index + 1;
    j["epsilon"] = p.epsilon;
    j["lambda"] = p.lambda;
    j["pivot_vector"] = vector_to_json(p.psi);
    Json dt = Json::array();
    for (const auto& row : p.d_table) {
      Json r = Json::array();
      for (double x : row) r.push_back(x);
      dt.push_back(r);
    }
    j["d_table"] = dt;
    j["povm"] = povm_to_json(p.povm);
    j["achieved_gain"] = p.achieved_gain;
  }
  return j;
}

inline Json gain_to_json(const GainReport& g) {
  Json j;
  j["max_gain"] = g.max_gain;
  j["optimal_povm"] = povm_to_json(g.optimal_povm);
  j["dual_Y"] = matrix_to_json(g.dual_y);
  j["duality_gap"] = g.duality_gap;
  j["bound_m_lambda"] = g.bound_m_lambda;
  j["bound_positive_eigs"] = g.bound_positive_eigs;
  j["epsilon_certificate"] = g.epsilon_certificate;
  return j;
}

}  // namespace qce

#endif  // QCE_IO_HPP
