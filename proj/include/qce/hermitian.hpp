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

// Hermitian eigendecomposition by cyclic Jacobi with complex 2x2 rotations,
// plus the semidefiniteness tests built on it.

#ifndef QCE_HERMITIAN_HPP
#define QCE_HERMITIAN_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qce/matrix.hpp"

namespace qce {

// Eigenvalues sorted descending; eigenvector k is column k of `eigenvectors`.
struct HermitianSpectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  CVector eigenvector(std::size_t k) const {
    CVector v(eigenvectors.rows());
    for (std::size_t r = 0; r < v.size(); ++r) v[r] = eigenvectors(r, k);
    return v;
  }

  ComplexMatrix reconstruct() const {
    const std::size_t n = eigenvalues.size();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          out(r, c) += eigenvalues[k] * eigenvectors(r, k) * std::conj(eigenvectors(c, k));
    return out;
  }
};

namespace detail {

inline double offdiag_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (r != c) s += std::norm(m(r, c));
  return std::sqrt(s);
}

}  // namespace detail

// Spectral decomposition of a Hermitian matrix. The input must be Hermitian
// within `tol` (relative Frobenius defect); it is symmetrized before the
// sweeps so accumulated drift cannot leak into the output.
inline HermitianSpectrum herm_eig(const ComplexMatrix& a, double tol = kDefaultTol) {
  if (!a.square()) throw Error(ErrorCode::DimensionMismatch, "herm_eig needs a square matrix");
  const double defect = hermiticity_defect(a);
  if (!(defect <= tol))  // also rejects non-finite input
    throw Error(ErrorCode::NotHermitian, "input exceeds the Hermitian tolerance");

  const std::size_t n = a.rows();
  ComplexMatrix m = hermitian_part(a);
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double norm_a = m.frobenius_norm();
  const double stop = 1e-14 * norm_a;
  const int max_sweeps = 100;

  bool converged = (n == 1) || norm_a == 0.0;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    if (detail::offdiag_norm(m) <= stop) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex beta = m(p, q);
        const double b = std::abs(beta);
        if (b <= 1e-18 * norm_a) continue;
        const Complex phase = beta / b;  // e^{i phi}

        const double alpha = m(p, p).real();
        const double gamma = m(q, q).real();
        const double tau = (gamma - alpha) / (2.0 * b);
        const double sgn = tau >= 0.0 ? 1.0 : -1.0;
        const double t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // J restricted to (p,q): [[c, s*phase], [-s*conj(phase), c]].
        // Apply M <- J^dag M J, touching only rows/cols p and q.
        const double new_pp = alpha * c * c - 2.0 * b * s * c + gamma * s * s;
        const double new_qq = alpha * s * s + 2.0 * b * s * c + gamma * c * c;
        m(p, p) = new_pp;
        m(q, q) = new_qq;
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const Complex mrp = m(r, p);
          const Complex mrq = m(r, q);
          m(r, p) = mrp * c - mrq * s * std::conj(phase);
          m(r, q) = mrp * s * phase + mrq * c;
          m(p, r) = std::conj(m(r, p));
          m(q, r) = std::conj(m(r, q));
        }
        for (std::size_t r = 0; r < n; ++r) {
          const Complex vrp = v(r, p);
          const Complex vrq = v(r, q);
          v(r, p) = vrp * c - vrq * s * std::conj(phase);
          v(r, q) = vrp * s * phase + vrq * c;
        }
      }
    }
  }
  if (!converged && detail::offdiag_norm(m) > stop)
    throw Error(ErrorCode::NoConvergence, "Jacobi sweep budget exhausted");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return m(i, i).real() > m(j, j).real(); });

  HermitianSpectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = m(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

struct NsdResult {
  bool is_nsd = false;
  double lambda_max = 0.0;
  CVector witness;  // unit eigenvector of lambda_max; empty when is_nsd
};

// Negative-semidefiniteness test: true iff lambda_max(A) <= tol * max(1, ||A||_F).
inline NsdResult nsd_check(const ComplexMatrix& a, double tol = kDefaultTol) {
  const HermitianSpectrum spec = herm_eig(a, tol);
  NsdResult out;
  out.lambda_max = spec.eigenvalues.front();
  out.is_nsd = out.lambda_max <= tol * std::max(1.0, a.frobenius_norm());
  if (!out.is_nsd) out.witness = spec.eigenvector(0);
  return out;
}

// Projection onto the PSD cone: clip negative eigenvalues. `sym_tol` bounds
// the admissible Hermitian defect of the input.
inline ComplexMatrix psd_clip(const ComplexMatrix& a, double sym_tol = 1e-6) {
  HermitianSpectrum spec = herm_eig(a, sym_tol);
  for (double& w : spec.eigenvalues) w = std::max(w, 0.0);
  return spec.reconstruct();
}

inline double lambda_max(const ComplexMatrix& a, double tol = 1e-6) {
  return herm_eig(a, tol).eigenvalues.front();
}

inline double lambda_min(const ComplexMatrix& a, double tol = 1e-6) {
  return herm_eig(a, tol).eigenvalues.back();
}

}  // namespace qce

#endif  // QCE_HERMITIAN_HPP
