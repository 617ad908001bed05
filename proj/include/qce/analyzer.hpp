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

// Deviation matrices, POVM gains, and the equilibrium decision.
//
// For an analyzed player with m own strategies and n opponents' joint
// strategies, each strategy i gets an m x m matrix
//   B_i(i1, i2) = sum_j rho^{i1 i2}_{jj} (a(i, j) - a(i1, j)),
// and the state is an equilibrium for that player iff every B_i is negative
// semidefinite. The gain of a POVM {E_i} over the computational-basis
// measurement is sum_i tr(E_i B_i).

#ifndef QCE_ANALYZER_HPP
#define QCE_ANALYZER_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qce/bipartition.hpp"
#include "qce/state.hpp"

namespace qce {

struct DeviationFamily {
  std::size_t player = 0;
  std::size_t m = 0;  // analyzed player's strategy count
  std::size_t n = 0;  // opponents' joint strategy count
  std::vector<ComplexMatrix> matrices;  // matrices[i] = B_{i+1}, each m x m
};

class Povm {
 public:
  explicit Povm(std::vector<ComplexMatrix> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) throw Error(ErrorCode::InvalidPovm, "a POVM needs at least one effect");
    const std::size_t d = effects_.front().rows();
    for (const auto& e : effects_)
      if (!e.square() || e.rows() != d)
        throw Error(ErrorCode::InvalidPovm, "effects must be square matrices of equal dimension");
  }

  static Povm computational_basis(std::size_t m) {
    std::vector<ComplexMatrix> effects;
    for (std::size_t i = 0; i < m; ++i) {
      ComplexMatrix e(m, m);
      e(i, i) = 1.0;
      effects.push_back(std::move(e));
    }
    return Povm(std::move(effects));
  }

  std::size_t outcome_count() const { return effects_.size(); }
  std::size_t dim() const { return effects_.front().rows(); }
  const ComplexMatrix& effect(std::size_t i) const { return effects_[i]; }
  const std::vector<ComplexMatrix>& effects() const { return effects_; }

  // PSD within tol per effect, completeness within tol entrywise.
  bool is_valid(double tol = kDefaultTol) const {
    ComplexMatrix sum(dim(), dim());
    for (const auto& e : effects_) {
      if (hermiticity_defect(e) > tol) return false;
      if (herm_eig(e, std::max(tol, 1e-7)).eigenvalues.back() < -tol) return false;
      sum += e;
    }
    sum -= ComplexMatrix::identity(dim());
    for (const Complex& z : sum.data())
      if (std::abs(z) > tol) return false;
    return true;
  }

  void validate(double tol = kDefaultTol) const {
    if (!is_valid(tol))
      throw Error(ErrorCode::InvalidPovm, "effects are not PSD or do not sum to identity");
  }

 private:
  std::vector<ComplexMatrix> effects_;
};

// Builds the deviation matrices for one player. Row i of B_i is zero by
// construction, not by cancellation.
inline DeviationFamily build_deviation_family(const DensityState& rho, const StrategicGame& game,
                                              std::size_t player) {
  if (rho.dim() != game.joint_strategy_count())
    throw Error(ErrorCode::DimensionMismatch, "state dimension differs from the joint strategy count");
  if (player >= game.player_count())
    throw Error(ErrorCode::DimensionMismatch, "player index out of range");

  const auto blocks = bipartition_diag_blocks(rho.matrix(), player, game.strategy_counts());
  const auto a = game.payoff_table(player);
  const std::size_t m = a.size();
  const std::size_t n = blocks.size();

  DeviationFamily fam;
  fam.player = player;
  fam.m = m;
  fam.n = n;
  fam.matrices.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    ComplexMatrix b(m, m);
    for (std::size_t i1 = 0; i1 < m; ++i1) {
      if (i1 == i) continue;  // row i stays exactly zero
      for (std::size_t i2 = 0; i2 < m; ++i2)
        for (std::size_t j = 0; j < n; ++j)
          b(i1, i2) += blocks[j](i1, i2) * (a[i][j] - a[i1][j]);
    }
    fam.matrices.push_back(std::move(b));
  }
  return fam;
}

// Gain of a POVM against a deviation family: Re sum_i tr(E_i B_i). The sum is
// real for Hermitian effects even when the B_i are not Hermitian.
inline double povm_gain(const Povm& e, const DeviationFamily& fam) {
  if (e.outcome_count() != fam.m || e.dim() != fam.m)
    throw Error(ErrorCode::DimensionMismatch, "POVM outcomes differ from the family size");
  Complex g = 0.0;
  for (std::size_t i = 0; i < fam.m; ++i) g += trace_product(e.effect(i), fam.matrices[i]);
  return g.real();
}

// Brute-force gain: embeds each E_i x |j><j| as a full joint-space operator in
// the original basis, takes outcome probabilities p_ij = tr(M rho), and sums
// the payoff difference. Independent of the bipartition path.
inline double measurement_gain_oracle(const DensityState& rho, const StrategicGame& game,
                                      std::size_t player, const Povm& e,
                                      double tol = kDefaultTol) {
  if (rho.dim() != game.joint_strategy_count())
    throw Error(ErrorCode::DimensionMismatch, "state dimension differs from the joint strategy count");
  if (player >= game.player_count())
    throw Error(ErrorCode::DimensionMismatch, "player index out of range");
  const PlayerSplit split(game.strategy_counts(), player);
  if (e.outcome_count() != split.own_count() || e.dim() != split.own_count())
    throw Error(ErrorCode::DimensionMismatch, "POVM dimension differs from the player's space");
  e.validate(std::max(tol, 1e-7));

  const auto a = game.payoff_table(player);
  const std::size_t m = split.own_count();
  const std::size_t n = split.opponents_count();
  const std::size_t dim = rho.dim();

  double payoff_after = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      ComplexMatrix op(dim, dim);
      for (std::size_t i1 = 0; i1 < m; ++i1)
        for (std::size_t i2 = 0; i2 < m; ++i2)
          op(split.joint_index(i1, j), split.joint_index(i2, j)) = e.effect(i)(i1, i2);
      const double p = trace_product(op, rho.matrix()).real();
      payoff_after += p * a[i][j];
    }
  }
  return payoff_after - expected_payoff(rho, game, player);
}

struct HermitianConditionResult {
  bool holds = false;
  // Lexicographically first pair with sum_j rho^{i1 i2}_{jj} a(i1, j) !=
  // sum_j rho^{i1 i2}_{jj} a(i2, j), with the two sums.
  std::optional<std::pair<std::size_t, std::size_t>> violating_pair;
  Complex left = 0.0;
  Complex right = 0.0;
  double max_deviation = 0.0;
};

// Equality condition: necessary for the equilibrium property and equivalent
// to every B_i in the family being Hermitian. `tol` bounds |left - right|
// absolutely.
inline HermitianConditionResult check_hermitian_condition(const DensityState& rho,
                                                          const StrategicGame& game,
                                                          std::size_t player,
                                                          double tol = kDefaultTol) {
  const auto blocks = bipartition_diag_blocks(rho.matrix(), player, game.strategy_counts());
  const auto a = game.payoff_table(player);
  const std::size_t m = a.size();
  const std::size_t n = blocks.size();

  HermitianConditionResult out;
  out.holds = true;
  for (std::size_t i1 = 0; i1 < m; ++i1) {
    for (std::size_t i2 = i1 + 1; i2 < m; ++i2) {
      Complex left = 0.0, right = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        left += blocks[j](i1, i2) * a[i1][j];
        right += blocks[j](i1, i2) * a[i2][j];
      }
      const double dev = std::abs(left - right);
      out.max_deviation = std::max(out.max_deviation, dev);
      if (dev > tol && out.holds) {
        out.holds = false;
        out.violating_pair = {i1, i2};
        out.left = left;
        out.right = right;
      }
    }
  }
  return out;
}

// Family-level variant: checks that every matrix is Hermitian within tol
// (entries of B_i^dag - B_i are exactly the pairwise equality deficits).
inline HermitianConditionResult check_hermitian_condition(const DeviationFamily& fam,
                                                          double tol = kDefaultTol) {
  HermitianConditionResult out;
  out.holds = true;
  for (std::size_t i1 = 0; i1 < fam.m; ++i1) {
    for (std::size_t i2 = i1 + 1; i2 < fam.m; ++i2) {
      double dev = 0.0;
      for (const auto& b : fam.matrices)
        dev = std::max(dev, std::abs(b(i1, i2) - std::conj(b(i2, i1))));
      out.max_deviation = std::max(out.max_deviation, dev);
      if (dev > tol && out.holds) {
        out.holds = false;
        out.violating_pair = {i1, i2};
      }
    }
  }
  return out;
}

struct QceViolation {
  std::size_t player = 0;
  std::size_t strategy = 0;       // index i of the failing B_i
  double lambda_max = 0.0;        // largest eigenvalue of the Hermitian part
  CVector witness;                // its unit eigenvector
  bool hermitian_condition_violated = false;
};

struct QceVerdict {
  bool is_qce = false;
  std::vector<QceViolation> violations;  // all failing (player, i), by player then i
};

// Full equilibrium decision. Every failing (player, i) is reported, not just
// the first; B_i that are non-Hermitian beyond tol are flagged and witnessed
// by their Hermitian part's top eigenpair.
inline QceVerdict check_qce(const DensityState& rho, const StrategicGame& game,
                            double tol = kDefaultTol) {
  QceVerdict verdict;
  for (std::size_t player = 0; player < game.player_count(); ++player) {
    if (game.strategy_counts()[player] == 1) continue;  // no deviation exists
    const DeviationFamily fam = build_deviation_family(rho, game, player);
    const HermitianConditionResult herm = check_hermitian_condition(fam, tol);
    for (std::size_t i = 0; i < fam.m; ++i) {
      const ComplexMatrix h = hermitian_part(fam.matrices[i]);
      const HermitianSpectrum spec = herm_eig(h, tol);
      const double lam = spec.eigenvalues.front();
      const bool nsd = lam <= tol * std::max(1.0, h.frobenius_norm());
      if (nsd && herm.holds) continue;
      QceViolation v;
      v.player = player;
      v.strategy = i;
      v.lambda_max = lam;
      v.witness = spec.eigenvector(0);
      v.hermitian_condition_violated = !herm.holds;
      verdict.violations.push_back(std::move(v));
    }
  }
  verdict.is_qce = verdict.violations.empty();
  return verdict;
}

}  // namespace qce

#endif  // QCE_ANALYZER_HPP
