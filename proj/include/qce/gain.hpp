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

// Exact maximum gain over POVMs:
//
//   primal:  max sum_i tr(E_i B_i)   s.t.  E_i >= 0,  sum_i E_i = I
//   dual:    min tr(Y)               s.t.  Y >= B_i for all i
//
// solved by projected gradient ascent on the primal (the gradient is the
// constant tuple (B_1,...,B_m)), with the POVM-set projection computed by
// Dykstra alternating projections between the affine slice sum E_i = I and
// the product of PSD cones. Dual certificates are extracted from the primal
// iterate through complementary slackness (Y = Herm(sum E_i B_i) shifted to
// feasibility) and from subgradient descent on the exact-penalty dual, and
// the best feasible one is kept. Every reported number is recomputed from
// the returned POVM and eigenvalues, never read off solver internals.

#ifndef QCE_GAIN_HPP
#define QCE_GAIN_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "qce/analyzer.hpp"
#include "qce/hermitian.hpp"

namespace qce {

struct GainReport {
  double max_gain = 0.0;
  Povm optimal_povm{std::vector<ComplexMatrix>{ComplexMatrix::identity(1)}};
  ComplexMatrix dual_y;
  double duality_gap = 0.0;
  double bound_m_lambda = 0.0;
  double bound_positive_eigs = 0.0;
  double epsilon_certificate = 0.0;
  std::size_t iterations = 0;
};

struct MaxGainOptions {
  double tol = kDefaultTol;
  // Internal stop; tighter than the required gap to leave certification margin.
  double target_rel_gap = 1e-9;
  // NoConvergence only when the final gap exceeds this.
  double required_rel_gap = 1e-6;
  std::size_t max_iterations = 50000;
  std::size_t check_interval = 25;
};

// Gain <= m * max_i lambda_max(B_i); degenerates to 0 when no eigenvalue is
// positive.
inline double bound_m_lambda(const DeviationFamily& fam, double tol = kDefaultTol) {
  double lam = 0.0;
  bool first = true;
  for (const auto& b : fam.matrices) {
    const double l = herm_eig(b, tol).eigenvalues.front();
    lam = first ? l : std::max(lam, l);
    first = false;
  }
  return lam > 0.0 ? static_cast<double>(fam.m) * lam : 0.0;
}

// Gain <= sum of all strictly positive eigenvalues across the family.
inline double bound_positive_eigs(const DeviationFamily& fam, double tol = kDefaultTol) {
  double sum = 0.0;
  for (const auto& b : fam.matrices)
    for (double w : herm_eig(b, tol).eigenvalues)
      if (w > 0.0) sum += w;
  return sum;
}

// The state is an epsilon-approximate equilibrium for this player with
// epsilon = min of the two bounds, clamped below at 0.
inline double epsilon_certificate(const DeviationFamily& fam, double tol = kDefaultTol) {
  return std::max(0.0, std::min(bound_m_lambda(fam, tol), bound_positive_eigs(fam, tol)));
}

// Closed form for m = 2: max over 0 <= E <= I of tr(E(B1-B2)) + tr(B2)
// = tr(B2) + sum of positive eigenvalues of B1 - B2. Test oracle, independent
// of the iterative solver.
inline double two_outcome_oracle(const ComplexMatrix& b1, const ComplexMatrix& b2,
                                 double tol = kDefaultTol) {
  if (b1.rows() != b2.rows() || b1.cols() != b2.cols())
    throw Error(ErrorCode::DimensionMismatch, "oracle needs matrices of equal shape");
  if (hermiticity_defect(b1) > tol || hermiticity_defect(b2) > tol)
    throw Error(ErrorCode::NotHermitian, "oracle inputs must be Hermitian");
  double value = b2.trace().real();
  for (double w : herm_eig(b1 - b2, tol).eigenvalues)
    if (w > 0.0) value += w;
  return value;
}

namespace detail {

using MatrixTuple = std::vector<ComplexMatrix>;

inline MatrixTuple zero_tuple(std::size_t m, std::size_t dim) {
  return MatrixTuple(m, ComplexMatrix(dim, dim));
}

// Orthogonal projection onto { sum_i X_i = I }: shift every block by
// (sum - I)/m.
inline void project_affine(MatrixTuple& xs) {
  const std::size_t dim = xs.front().rows();
  ComplexMatrix shift(dim, dim);
  for (const auto& x : xs) shift += x;
  shift -= ComplexMatrix::identity(dim);
  shift *= Complex(1.0 / static_cast<double>(xs.size()), 0.0);
  for (auto& x : xs) x -= shift;
}

// Dykstra projection onto the POVM set (affine slice intersected with the
// product of PSD cones).
inline MatrixTuple project_povm_set(MatrixTuple xs, std::size_t max_cycles = 400,
                                    double tol = 1e-12) {
  const std::size_t m = xs.size();
  const std::size_t dim = xs.front().rows();
  MatrixTuple p = zero_tuple(m, dim), q = zero_tuple(m, dim);
  MatrixTuple z = xs;
  for (std::size_t cycle = 0; cycle < max_cycles; ++cycle) {
    MatrixTuple w(m, ComplexMatrix(dim, dim));
    for (std::size_t i = 0; i < m; ++i) w[i] = z[i] + p[i];
    MatrixTuple y = w;
    project_affine(y);
    for (std::size_t i = 0; i < m; ++i) p[i] = w[i] - y[i];
    double delta = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const ComplexMatrix w2 = y[i] + q[i];
      ComplexMatrix zn = psd_clip(w2);
      q[i] = w2 - zn;
      delta = std::max(delta, (zn - z[i]).frobenius_norm());
      z[i] = std::move(zn);
    }
    if (delta <= tol && cycle > 0) break;
  }
  return z;
}

// Inverse square root of a PSD matrix; eigenvalues floored relative to the
// largest one for stability.
inline ComplexMatrix inv_sqrt(const ComplexMatrix& a) {
  const HermitianSpectrum s = herm_eig(a, 1e-6);
  const std::size_t n = a.rows();
  const double floor_eps = std::max(1e-300, 1e-13 * std::max(1.0, s.eigenvalues.front()));
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = std::max(s.eigenvalues[k], floor_eps);
    const CVector v = s.eigenvector(k);
    const double f = 1.0 / std::sqrt(w);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) out(r, c) += f * v[r] * std::conj(v[c]);
  }
  return out;
}

inline bool all_finite(const MatrixTuple& xs) {
  for (const auto& x : xs)
    for (const Complex& z : x.data())
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

// Fixed-point polish on the shifted weights W_i = B_i + cI >= 0:
//   E_i <- R^{-1/2} W_i E_i W_i R^{-1/2},  R = sum_j W_j E_j W_j,
// which maps POVMs to POVMs and has the optimal measurements among its fixed
// points. Used as an extra candidate generator; all certification still goes
// through the feasibilized-candidate machinery.
inline MatrixTuple polish_fixed_point(MatrixTuple es, const MatrixTuple& bs,
                                      std::size_t iters = 250) {
  const std::size_t m = bs.size();
  const std::size_t dim = bs.front().rows();
  double c = 0.0;
  for (const auto& b : bs) c = std::max(c, -herm_eig(b, 1e-6).eigenvalues.back());
  c += 0.25;
  MatrixTuple ws;
  ws.reserve(m);
  for (const auto& b : bs) ws.push_back(b + ComplexMatrix::identity(dim) * Complex(c, 0.0));

  MatrixTuple prev = es;
  for (std::size_t it = 0; it < iters; ++it) {
    MatrixTuple g(m, ComplexMatrix(dim, dim));
    ComplexMatrix r(dim, dim);
    for (std::size_t i = 0; i < m; ++i) {
      g[i] = ws[i] * es[i] * ws[i];
      r += g[i];
    }
    const ComplexMatrix ris = inv_sqrt(r);
    double delta = 0.0;
    prev = es;
    for (std::size_t i = 0; i < m; ++i) {
      ComplexMatrix next = hermitian_part(ris * g[i] * ris);
      delta = std::max(delta, (next - es[i]).frobenius_norm());
      es[i] = std::move(next);
    }
    if (!all_finite(es)) return prev;
    if (delta <= 1e-15) break;
  }
  return es;
}

// Exact POVM feasibilization: clip each block to the PSD cone, then sandwich
// with T^{-1/2}, T = sum of the clipped blocks, so completeness holds to
// machine precision.
inline Povm feasibilize(const MatrixTuple& xs) {
  const std::size_t dim = xs.front().rows();
  MatrixTuple clipped;
  clipped.reserve(xs.size());
  ComplexMatrix t(dim, dim);
  for (const auto& x : xs) {
    clipped.push_back(psd_clip(x));
    t += clipped.back();
  }
  HermitianSpectrum st = herm_eig(t, 1e-6);
  ComplexMatrix tis(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double w = std::max(st.eigenvalues[k], 1e-12);
    const CVector vk = st.eigenvector(k);
    const ComplexMatrix proj = outer(vk, vk);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) tis(r, c) += proj(r, c) / std::sqrt(w);
  }
  std::vector<ComplexMatrix> effects;
  effects.reserve(xs.size());
  for (const auto& x : clipped) effects.push_back(hermitian_part(tis * x * tis));
  return Povm(std::move(effects));
}

inline double tuple_value(const MatrixTuple& es, const MatrixTuple& bs) {
  Complex v = 0.0;
  for (std::size_t i = 0; i < es.size(); ++i) v += trace_product(es[i], bs[i]);
  return v.real();
}

// Complementary-slackness dual candidate: Y = Herm(sum E_i B_i) shifted into
// feasibility by max_i lambda_max(B_i - Y) when positive. tr of the unshifted
// candidate equals the primal value, so the certified gap is m * shift.
inline ComplexMatrix dual_from_primal(const MatrixTuple& es, const MatrixTuple& bs) {
  const std::size_t dim = bs.front().rows();
  ComplexMatrix yc(dim, dim);
  for (std::size_t i = 0; i < es.size(); ++i) yc += es[i] * bs[i];
  yc = hermitian_part(yc);
  double shift = 0.0;
  for (const auto& b : bs) shift = std::max(shift, herm_eig(b - yc, 1e-6).eigenvalues.front());
  if (shift > 0.0) yc += ComplexMatrix::identity(dim) * Complex(shift, 0.0);
  return yc;
}

// Exact-penalty subgradient descent on the dual, started from the trivially
// feasible Y0 = lambda * I. Returns the best feasible iterate found.
inline ComplexMatrix improve_dual_subgradient(const MatrixTuple& bs, double lambda0,
                                              std::size_t iters = 200) {
  const std::size_t dim = bs.front().rows();
  const std::size_t m = bs.size();
  const double penalty = 10.0 * static_cast<double>(m);
  ComplexMatrix y = ComplexMatrix::identity(dim) * Complex(std::max(lambda0, 0.0), 0.0);
  ComplexMatrix best = y;
  double best_tr = best.trace().real();
  double scale = 0.0;
  for (const auto& b : bs) scale = std::max(scale, b.frobenius_norm());
  const double step0 = (1.0 + scale) / 10.0;
  for (std::size_t t = 1; t <= iters; ++t) {
    // subgradient of tr(Y) + K sum_i max(0, lambda_max(B_i - Y))
    ComplexMatrix grad = ComplexMatrix::identity(dim);
    double worst = 0.0;
    for (const auto& b : bs) {
      const HermitianSpectrum s = herm_eig(b - y, 1e-6);
      worst = std::max(worst, s.eigenvalues.front());
      if (s.eigenvalues.front() > 0.0) {
        const CVector psi = s.eigenvector(0);
        grad -= outer(psi, psi) * Complex(penalty, 0.0);
      }
    }
    // feasibilized copy of the current iterate
    ComplexMatrix feas = y;
    if (worst > 0.0) feas += ComplexMatrix::identity(dim) * Complex(worst, 0.0);
    const double tr = feas.trace().real();
    if (tr < best_tr) {
      best_tr = tr;
      best = feas;
    }
    const double step = step0 / std::sqrt(static_cast<double>(t));
    y -= grad * Complex(step, 0.0);
    y = hermitian_part(y);
  }
  return best;
}

}  // namespace detail

// Solves the maximum-gain problem for one player's deviation family. The
// family must satisfy the Hermitian condition; otherwise the problem is not
// well posed at this level and the unitary deviation route applies.
inline GainReport max_gain(const DeviationFamily& fam, const MaxGainOptions& opts = {}) {
  GainReport report;
  const std::size_t m = fam.m;

  if (m == 1) {
    report.optimal_povm = Povm::computational_basis(1);
    report.max_gain = povm_gain(report.optimal_povm, fam);
    report.dual_y = ComplexMatrix(1, 1);
    return report;
  }
  if (!check_hermitian_condition(fam, opts.tol).holds)
    throw Error(ErrorCode::HermitianConditionViolated,
                "family violates the Hermitian condition; use the unitary deviation route");

  detail::MatrixTuple bs;
  bs.reserve(m);
  double lambda = 0.0;
  double scale = 0.0;
  bool first = true;
  for (const auto& b : fam.matrices) {
    bs.push_back(hermitian_part(b));
    const double l = herm_eig(bs.back(), 1e-6).eigenvalues.front();
    lambda = first ? l : std::max(lambda, l);
    scale = std::max(scale, bs.back().frobenius_norm());
    first = false;
  }
  report.bound_m_lambda = lambda > 0.0 ? static_cast<double>(m) * lambda : 0.0;
  report.bound_positive_eigs = bound_positive_eigs(fam, opts.tol);
  report.epsilon_certificate =
      std::max(0.0, std::min(report.bound_m_lambda, report.bound_positive_eigs));

  if (lambda <= 0.0) {
    // Every matrix is NSD: the basis measurement is optimal and Y = 0 is a
    // feasible dual with matching value.
    report.optimal_povm = Povm::computational_basis(m);
    report.max_gain = povm_gain(report.optimal_povm, fam);
    report.dual_y = ComplexMatrix(m, m);
    report.duality_gap = std::max(0.0, -report.max_gain);
    return report;
  }

  // Solve the normalized instance B/scale (so the iteration is exactly
  // scale-equivariant and the step rule sees unit-scale data), rescale after.
  for (auto& b : bs) b *= Complex(1.0 / scale, 0.0);
  const double lambda_n = lambda / scale;
  const double eta = 0.5;  // 1/(1 + max_i ||B_i||_F) at unit norm

  detail::MatrixTuple es(m, ComplexMatrix::identity(m) * Complex(1.0 / m, 0.0));
  detail::MatrixTuple avg = es;
  double navg = 1.0;

  // The computational basis achieves 0, so the primal best never drops below.
  Povm best_povm = Povm::computational_basis(m);
  double best_value = 0.0;
  ComplexMatrix best_y = ComplexMatrix::identity(m) * Complex(lambda_n, 0.0);
  double best_tr = best_y.trace().real();
  bool ran_subgradient = false;

  const auto consider_primal = [&](const detail::MatrixTuple& cand) {
    Povm p = detail::feasibilize(cand);
    const double v = detail::tuple_value(p.effects(), bs);
    const ComplexMatrix y = detail::dual_from_primal(p.effects(), bs);
    const double tr = y.trace().real();
    if (v > best_value) {
      best_value = v;
      best_povm = std::move(p);
    }
    if (tr < best_tr) {
      best_tr = tr;
      best_y = y;
    }
  };

  std::size_t t = 0;
  while (t < opts.max_iterations) {
    for (std::size_t inner = 0; inner < opts.check_interval && t < opts.max_iterations;
         ++inner, ++t) {
      detail::MatrixTuple stepped(m, ComplexMatrix(m, m));
      for (std::size_t i = 0; i < m; ++i) stepped[i] = es[i] + bs[i] * Complex(eta, 0.0);
      es = detail::project_povm_set(std::move(stepped));
      navg += 1.0;
      for (std::size_t i = 0; i < m; ++i) {
        ComplexMatrix diff = es[i] - avg[i];
        diff *= Complex(1.0 / navg, 0.0);
        avg[i] += diff;
      }
    }
    consider_primal(es);
    consider_primal(avg);
    consider_primal(detail::polish_fixed_point(es, bs));
    consider_primal(detail::polish_fixed_point(avg, bs));
    if (best_tr - best_value <= opts.target_rel_gap * (1.0 + std::abs(best_value))) break;
    if (!ran_subgradient && t >= 10 * opts.check_interval) {
      ran_subgradient = true;
      const ComplexMatrix y = detail::improve_dual_subgradient(bs, lambda_n);
      if (y.trace().real() < best_tr) {
        best_tr = y.trace().real();
        best_y = y;
      }
    }
  }
  report.iterations = t;

  // Final feasibility repair on the dual, then recompute everything reported
  // in the original scale.
  double slack = 0.0;
  for (const auto& b : bs) slack = std::max(slack, herm_eig(b - best_y, 1e-6).eigenvalues.front());
  if (slack > 0.0) best_y += ComplexMatrix::identity(m) * Complex(slack, 0.0);
  best_y *= Complex(scale, 0.0);

  report.optimal_povm = best_povm;
  report.max_gain = povm_gain(best_povm, fam);
  report.dual_y = best_y;
  report.duality_gap = std::max(0.0, best_y.trace().real() - report.max_gain);

  if (report.duality_gap > opts.required_rel_gap * (1.0 + std::abs(report.max_gain)))
    throw Error(ErrorCode::NoConvergence, "iteration budget exhausted with the gap above tolerance");
  return report;
}

}  // namespace qce

#endif  // QCE_GAIN_HPP
