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

// Classical strategic games and the classical equilibrium checks.

#ifndef QCE_GAME_HPP
#define QCE_GAME_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "qce/indexing.hpp"

namespace qce {

class StrategicGame {
 public:
  // utilities[i] is player i's payoff tensor over joint strategies, flattened
  // row-major with player 1 slowest.
  StrategicGame(std::vector<std::size_t> strategy_counts,
                std::vector<std::vector<double>> utilities)
      : strategy_counts_(std::move(strategy_counts)), utilities_(std::move(utilities)) {
    if (strategy_counts_.empty())
      throw Error(ErrorCode::InvalidGame, "game needs at least one player");
    for (std::size_t d : strategy_counts_)
      if (d == 0) throw Error(ErrorCode::InvalidGame, "strategy count must be >= 1");
    if (utilities_.size() != strategy_counts_.size())
      throw Error(ErrorCode::InvalidGame, "one utility tensor per player required");
    const std::size_t total = joint_count(strategy_counts_);
    for (const auto& u : utilities_) {
      if (u.size() != total)
        throw Error(ErrorCode::InvalidGame, "utility tensor length differs from joint strategy count");
      for (double x : u)
        if (!std::isfinite(x)) throw Error(ErrorCode::InvalidGame, "utility entries must be finite");
    }
  }

  std::size_t player_count() const { return strategy_counts_.size(); }
  const std::vector<std::size_t>& strategy_counts() const { return strategy_counts_; }
  std::size_t joint_strategy_count() const { return joint_count(strategy_counts_); }

  double utility(std::size_t player, std::size_t joint_index) const {
    return utilities_[player][joint_index];
  }
  const std::vector<double>& utility_tensor(std::size_t player) const { return utilities_[player]; }

  // Payoff table in the analyzed player's bipartite layout: a(i, j) with i the
  // player's own strategy and j the opponents' reduced joint strategy.
  std::vector<std::vector<double>> payoff_table(std::size_t player) const {
    const PlayerSplit split(strategy_counts_, player);
    std::vector<std::vector<double>> a(split.own_count(),
                                       std::vector<double>(split.opponents_count()));
    for (std::size_t i = 0; i < split.own_count(); ++i)
      for (std::size_t j = 0; j < split.opponents_count(); ++j)
        a[i][j] = utilities_[player][split.joint_index(i, j)];
    return a;
  }

 private:
  std::vector<std::size_t> strategy_counts_;
  std::vector<std::vector<double>> utilities_;
};

class ClassicalDistribution {
 public:
  // Entries in [-1e-12, 0) are clamped to zero on ingestion; genuinely
  // negative entries and sums off 1 beyond 1e-9 are rejected.
  ClassicalDistribution(std::vector<std::size_t> strategy_counts, std::vector<double> p)
      : strategy_counts_(std::move(strategy_counts)), p_(std::move(p)) {
    if (p_.size() != joint_count(strategy_counts_))
      throw Error(ErrorCode::InvalidDistribution, "probability tensor length differs from joint count");
    double sum = 0.0;
    for (double& x : p_) {
      if (!std::isfinite(x)) throw Error(ErrorCode::InvalidDistribution, "probabilities must be finite");
      if (x < 0.0) {
        if (x < -1e-12) throw Error(ErrorCode::InvalidDistribution, "negative probability entry");
        x = 0.0;
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw Error(ErrorCode::InvalidDistribution, "probabilities must sum to 1");
  }

  const std::vector<std::size_t>& strategy_counts() const { return strategy_counts_; }
  const std::vector<double>& probabilities() const { return p_; }
  double operator[](std::size_t joint_index) const { return p_[joint_index]; }

 private:
  std::vector<std::size_t> strategy_counts_;
  std::vector<double> p_;
};

struct ClassicalCheckResult {
  bool holds = false;
  // Lexicographically first violating (player, suggested strategy, deviation).
  struct Witness {
    std::size_t player;
    std::size_t from;
    std::size_t to;
  };
  std::optional<Witness> witness;
};

// Correlated-equilibrium check: for every player i and pair (s_i, s_i'),
// sum_{s_-i} p(s_i, s_-i) (u_i(s_i, s_-i) - u_i(s_i', s_-i)) >= -tol.
inline ClassicalCheckResult classical_ce_check(const ClassicalDistribution& p,
                                               const StrategicGame& game,
                                               double tol = kDefaultTol) {
  if (p.strategy_counts() != game.strategy_counts())
    throw Error(ErrorCode::DimensionMismatch, "distribution shape differs from the game");
  ClassicalCheckResult out;
  out.holds = true;
  for (std::size_t player = 0; player < game.player_count(); ++player) {
    const PlayerSplit split(game.strategy_counts(), player);
    const auto a = game.payoff_table(player);
    const std::size_t m = split.own_count();
    const std::size_t n = split.opponents_count();
    for (std::size_t from = 0; from < m; ++from) {
      for (std::size_t to = 0; to < m; ++to) {
        if (to == from) continue;
        double slack = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          slack += p[split.joint_index(from, j)] * (a[from][j] - a[to][j]);
        if (slack < -tol) {
          out.holds = false;
          out.witness = {player, from, to};
          return out;
        }
      }
    }
  }
  return out;
}

// Mixed-Nash check on a product distribution given by per-player factors.
// Inequalities are only enforced on strategies played with probability > tol.
inline ClassicalCheckResult classical_ne_check(const std::vector<std::vector<double>>& factors,
                                               const StrategicGame& game,
                                               double tol = kDefaultTol) {
  if (factors.size() != game.player_count())
    throw Error(ErrorCode::DimensionMismatch, "one factor per player required");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].size() != game.strategy_counts()[i])
      throw Error(ErrorCode::DimensionMismatch, "factor length differs from the strategy count");
    double sum = 0.0;
    for (double x : factors[i]) {
      if (x < -1e-12) throw Error(ErrorCode::InvalidDistribution, "negative factor entry");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw Error(ErrorCode::InvalidDistribution, "factors must sum to 1");
  }

  ClassicalCheckResult out;
  out.holds = true;
  for (std::size_t player = 0; player < game.player_count(); ++player) {
    const PlayerSplit split(game.strategy_counts(), player);
    const auto a = game.payoff_table(player);
    const std::size_t m = split.own_count();
    const std::size_t n = split.opponents_count();

    // Opponents' product weight at reduced coordinate j.
    std::vector<double> w(n, 1.0);
    std::vector<std::size_t> reduced_dims;
    for (std::size_t l = 0; l < game.player_count(); ++l)
      if (l != player) reduced_dims.push_back(game.strategy_counts()[l]);
    if (reduced_dims.empty()) reduced_dims.push_back(1);
    const auto rstrides = row_major_strides(reduced_dims);
    for (std::size_t j = 0; j < n; ++j) {
      const auto coords = unflatten(j, rstrides);
      std::size_t l = 0;
      for (std::size_t pidx = 0; pidx < game.player_count(); ++pidx) {
        if (pidx == player) continue;
        w[j] *= factors[pidx][coords[l++]];
      }
    }

    for (std::size_t from = 0; from < m; ++from) {
      if (factors[player][from] <= tol) continue;
      for (std::size_t to = 0; to < m; ++to) {
        if (to == from) continue;
        double slack = 0.0;
        for (std::size_t j = 0; j < n; ++j) slack += w[j] * (a[from][j] - a[to][j]);
        if (slack < -tol) {
          out.holds = false;
          out.witness = {player, from, to};
          return out;
        }
      }
    }
  }
  return out;
}

inline ClassicalDistribution product_distribution(const std::vector<std::vector<double>>& factors,
                                                  const std::vector<std::size_t>& strategy_counts) {
  const auto strides = row_major_strides(strategy_counts);
  std::vector<double> p(joint_count(strategy_counts), 1.0);
  for (std::size_t s = 0; s < p.size(); ++s) {
    const auto coords = unflatten(s, strides);
    for (std::size_t l = 0; l < strategy_counts.size(); ++l) p[s] *= factors[l][coords[l]];
  }
  return ClassicalDistribution(strategy_counts, std::move(p));
}

}  // namespace qce

#endif  // QCE_GAME_HPP
