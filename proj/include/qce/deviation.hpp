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

// Explicit profitable deviations.
//
// Two routes, matching the two necessary conditions:
//  - equality condition violated at a pair (i1, i2): a two-level unitary on
//    span{|i1>, |i2>} already gains;
//  - all B_i Hermitian but some B_i has a positive eigenvalue lambda with
//    unit eigenvector psi: an m-outcome POVM built around
//    E_1 = eps |psi><psi| + |1><1| gains eps*lambda up to O(eps^2).

#ifndef QCE_DEVIATION_HPP
#define QCE_DEVIATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>
#include <variant>
#include <vector>

#include "qce/analyzer.hpp"

namespace qce {

struct UnitaryDeviation {
  std::size_t player = 0;
  std::pair<std::size_t, std::size_t> pair{0, 0};
  // Block action on span{|i1>, |i2>}: U|i1> = u11|i1> + u12|i2>,
  // U|i2> = u21|i1> + u22|i2>; identity elsewhere.
  Complex u11, u12, u21, u22;
  double x = 0.0;      // rotation weight, in (0, 1)
  double r = 0.0;      // phase aligning the cross term
  double c = 0.0;      // diagonal-penalty ratio, clamped at 0
  double achieved_gain = 0.0;

  // The POVM induced by measuring after the unitary: U|i><i|U^dag.
  Povm induced_povm(std::size_t m) const {
    std::vector<ComplexMatrix> effects;
    effects.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      CVector col(m, 0.0);
      if (i == pair.first) {
        col[pair.first] = u11;
        col[pair.second] = u12;
      } else if (i == pair.second) {
        col[pair.first] = u21;
        col[pair.second] = u22;
      } else {
        col[i] = 1.0;
      }
      effects.push_back(outer(col, col));
    }
    return Povm(std::move(effects));
  }
};

struct PovmDeviation {
  std::size_t player = 0;
  Povm povm{std::vector<ComplexMatrix>{ComplexMatrix::identity(1)}};
  double epsilon = 0.0;
  double lambda = 0.0;       // positive eigenvalue of the pivot matrix
  CVector psi;               // its eigenvector in the relabeled frame; psi[0] = 0
  std::size_t violated_index = 0;  // index i of the B_i used, original labels
  std::vector<std::vector<double>> d_table;  // d_table[i-2][k-i] = d_{ik}, relabeled frame
  double achieved_gain = 0.0;
};

using Deviation = std::variant<UnitaryDeviation, PovmDeviation>;

inline double deviation_gain(const Deviation& d) {
  return std::visit([](const auto& v) { return v.achieved_gain; }, d);
}

namespace detail {

// Golden-section maximization of a unimodal function on (lo, hi).
template <typename F>
double golden_section_max(F f, double lo, double hi, double width = 1e-12) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > width) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return (a + b) / 2.0;
}

}  // namespace detail

// Two-level unitary deviation at a pair violating the equality condition.
// The gain over the rotation weight x is
//   G(x) = 2 sqrt(x(1-x)) |g| - x (P1 + P2),
// g the off-diagonal block sum at (i1, i2), P1/P2 the two diagonal penalty
// sums; the phase r = -arg(g) makes the cross term real positive. G is
// concave on (0, 1), maximized by golden-section search.
inline UnitaryDeviation synthesize_unitary(const DensityState& rho, const StrategicGame& game,
                                           std::size_t player,
                                           std::pair<std::size_t, std::size_t> pair,
                                           double tol = kDefaultTol) {
  const auto blocks = bipartition_diag_blocks(rho.matrix(), player, game.strategy_counts());
  const auto a = game.payoff_table(player);
  const std::size_t m = a.size();
  const std::size_t n = blocks.size();
  const auto [i1, i2] = pair;
  if (i1 >= m || i2 >= m || i1 == i2)
    throw Error(ErrorCode::DimensionMismatch, "invalid strategy pair");

  Complex g = 0.0;
  double p1 = 0.0, p2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double da = a[i1][j] - a[i2][j];
    g += Complex(da, 0.0) * blocks[j](i1, i2);
    p1 += da * blocks[j](i1, i1).real();
    p2 -= da * blocks[j](i2, i2).real();
  }
  const double amp = std::abs(g);
  if (amp <= tol)
    throw Error(ErrorCode::ConditionNotViolated,
                "equality condition holds at this pair within tolerance");

  UnitaryDeviation dev;
  dev.player = player;
  dev.pair = pair;
  dev.r = -std::arg(g);
  dev.c = std::max(0.0, std::max(p2, p1) / amp);

  const double s = p1 + p2;
  const auto gain_at = [&](double x) {
    return 2.0 * std::sqrt(x * (1.0 - x)) * amp - x * s;
  };
  double x = detail::golden_section_max(gain_at, 0.0, 1.0);
  if (!(x > 0.0 && x < 1.0) || gain_at(x) <= 0.0)
    x = 1.0 / (2.0 * (dev.c * dev.c + 1.0));  // fallback inside the paper's admissible range
  dev.x = x;

  const double u11 = std::sqrt(1.0 - x);
  const double ux = std::sqrt(x);
  dev.u11 = u11;
  dev.u12 = std::polar(ux, dev.r);
  dev.u21 = -std::polar(ux, -dev.r);
  dev.u22 = u11;

  const DeviationFamily fam = build_deviation_family(rho, game, player);
  dev.achieved_gain = povm_gain(dev.induced_povm(m), fam);
  return dev;
}

namespace detail {

// Applies the label permutation perm (new index -> old index) to a family
// matrix: out(r, c) = b(perm[r], perm[c]).
inline ComplexMatrix relabel(const ComplexMatrix& b, const std::vector<std::size_t>& perm) {
  ComplexMatrix out(b.rows(), b.cols());
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) = b(perm[r], perm[c]);
  return out;
}

}  // namespace detail

// POVM deviation from a Hermitian family with a positive eigenvalue. The
// construction relabels strategies so the violated index is 1 and the
// largest eigenvector entry sits at position 2, builds the d-table of the
// arrow matrices E_2..E_m, and shrinks eps geometrically until the effects
// are PSD and the recomputed gain clears eps*lambda/2. Each hub's spoke
// entries carry the factor N_i (its nonzero-spoke count), which makes the
// arrow matrices exactly PSD while keeping d_{ik} = O(eps^2).
inline PovmDeviation synthesize_povm(const DeviationFamily& fam, double tol = kDefaultTol) {
  const std::size_t m = fam.m;
  if (!check_hermitian_condition(fam, tol).holds)
    throw Error(ErrorCode::HermitianConditionViolated,
                "family violates the Hermitian condition; use the unitary deviation route");

  std::size_t pivot = 0;
  double lambda = 0.0;
  CVector vec;
  for (std::size_t i = 0; i < m; ++i) {
    const HermitianSpectrum spec = herm_eig(fam.matrices[i], tol);
    if (spec.eigenvalues.front() > lambda) {
      lambda = spec.eigenvalues.front();
      pivot = i;
      vec = spec.eigenvector(0);
    }
  }
  if (lambda <= tol)
    throw Error(ErrorCode::NotApplicable, "every matrix in the family is negative semidefinite");

  // Relabel: violated index -> 0, then the largest remaining eigenvector
  // entry -> 1. perm maps new labels to old labels.
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::swap(perm[0], perm[pivot]);
  CVector v(m);
  for (std::size_t r = 0; r < m; ++r) v[r] = vec[perm[r]];
  v[0] = 0.0;  // exact: the pivot row and column of B_pivot vanish
  std::size_t arg = 1;
  for (std::size_t r = 2; r < m; ++r)
    if (std::abs(v[r]) > std::abs(v[arg])) arg = r;
  std::swap(perm[1], perm[arg]);
  std::swap(v[1], v[arg]);
  if (m > 1 && std::abs(v[1]) < 1e-12) {
    // Unreachable after relabeling a unit vector, kept as a guard: nudge the
    // pivot entry and renormalize, as a perturbed eigenvector still gains.
    v[1] = 1e-8;
  }
  const double norm = vector_norm(v);
  if (norm == 0.0) throw Error(ErrorCode::NumericalBreakdown, "degenerate eigenvector");
  for (Complex& z : v) z /= norm;

  PovmDeviation dev;
  dev.player = fam.player;
  dev.lambda = lambda;
  dev.psi = v;
  dev.violated_index = pivot;

  // inverse permutation: old label -> new label
  std::vector<std::size_t> inv(m);
  for (std::size_t r = 0; r < m; ++r) inv[perm[r]] = r;

  double eps = 0.5;
  for (int attempt = 0; attempt < 60; ++attempt, eps /= 2.0) {
    // d table in 1-based paper indices; d[i][k] for 2 <= i <= k <= m.
    std::vector<std::vector<double>> d(m + 1, std::vector<double>(m + 1, 0.0));
    bool ok = m >= 2;
    if (ok) d[2][2] = 1.0 - eps * std::norm(v[1]);
    for (std::size_t i = 2; ok && i <= m; ++i) {
      if (i >= 3) {
        d[i][i] = 1.0 - eps * std::norm(v[i - 1]);
        for (std::size_t l = 2; l < i; ++l) d[i][i] -= d[l][i];
      }
      if (d[i][i] <= 0.0) {
        ok = false;
        break;
      }
      std::size_t spokes = 0;
      for (std::size_t k = i + 1; k <= m; ++k)
        if (std::abs(v[i - 1] * v[k - 1]) > 0.0) ++spokes;
      for (std::size_t k = i + 1; k <= m; ++k) {
        const double w = eps * std::abs(v[i - 1] * v[k - 1]);
        d[i][k] = w > 0.0 ? static_cast<double>(spokes) * w * w / d[i][i] : 0.0;
      }
    }
    if (!ok) continue;

    // Assemble the effects in the relabeled frame.
    std::vector<ComplexMatrix> effects(m, ComplexMatrix(m, m));
    effects[0] = outer(v, v) * Complex(eps, 0.0);
    effects[0](0, 0) += 1.0;
    for (std::size_t i = 2; i <= m; ++i) {
      ComplexMatrix& e = effects[i - 1];
      e(i - 1, i - 1) = d[i][i];
      for (std::size_t k = i + 1; k <= m; ++k) {
        e(k - 1, k - 1) = d[i][k];
        e(i - 1, k - 1) = -eps * v[i - 1] * std::conj(v[k - 1]);
        e(k - 1, i - 1) = std::conj(e(i - 1, k - 1));
      }
    }
    // Permute back to the original labels.
    std::vector<ComplexMatrix> orig(m, ComplexMatrix(m, m));
    for (std::size_t i = 0; i < m; ++i) orig[perm[i]] = detail::relabel(effects[i], inv);
    Povm povm(std::move(orig));
    if (!povm.is_valid(std::max(tol, 1e-9))) continue;
    const double gain = povm_gain(povm, fam);
    if (gain < eps * lambda / 2.0) continue;

    dev.povm = std::move(povm);
    dev.epsilon = eps;
    dev.achieved_gain = gain;
    dev.d_table.clear();
    for (std::size_t i = 2; i <= m; ++i) {
      std::vector<double> row;
      for (std::size_t k = i; k <= m; ++k) row.push_back(d[i][k]);
      dev.d_table.push_back(std::move(row));
    }
    return dev;
  }
  throw Error(ErrorCode::NumericalBreakdown, "eps halving exhausted without a valid POVM");
}

// Dispatch: unitary route when the equality condition fails (at its first
// violating pair), POVM route otherwise.
inline Deviation synthesize_best_deviation(const DensityState& rho, const StrategicGame& game,
                                           std::size_t player, double tol = kDefaultTol) {
  if (player >= game.player_count())
    throw Error(ErrorCode::DimensionMismatch, "player index out of range");
  if (game.strategy_counts()[player] == 1)
    throw Error(ErrorCode::NotApplicable, "single-strategy player has no deviation");
  const HermitianConditionResult herm = check_hermitian_condition(rho, game, player, tol);
  if (!herm.holds) return synthesize_unitary(rho, game, player, *herm.violating_pair, tol);
  return synthesize_povm(build_deviation_family(rho, game, player), tol);
}

}  // namespace qce

#endif  // QCE_DEVIATION_HPP
