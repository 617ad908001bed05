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

// Density matrices over the joint strategy space, payoffs, and the two
// classical-to-quantum lifts.

#ifndef QCE_STATE_HPP
#define QCE_STATE_HPP

#include <cmath>
#include <utility>

#include "qce/game.hpp"
#include "qce/hermitian.hpp"
#include "qce/matrix.hpp"

namespace qce {

class DensityState {
 public:
  explicit DensityState(ComplexMatrix matrix, double tol = kDefaultTol)
      : matrix_(std::move(matrix)) {
    if (!matrix_.square()) throw Error(ErrorCode::InvalidState, "state matrix must be square");
    if (hermiticity_defect(matrix_) > tol)
      throw Error(ErrorCode::InvalidState, "state matrix is not Hermitian within tolerance");
    if (std::abs(matrix_.trace().real() - 1.0) > tol || std::abs(matrix_.trace().imag()) > tol)
      throw Error(ErrorCode::InvalidState, "state matrix must have unit trace");
    if (herm_eig(matrix_, tol).eigenvalues.back() < -tol)
      throw Error(ErrorCode::InvalidState, "state matrix must be positive semidefinite");
  }

  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

// Expected payoff sum_s <s|rho|s> u_i(s); only the diagonal of rho enters.
inline double expected_payoff(const DensityState& rho, const StrategicGame& game,
                              std::size_t player) {
  if (rho.dim() != game.joint_strategy_count())
    throw Error(ErrorCode::DimensionMismatch, "state dimension differs from the joint strategy count");
  if (player >= game.player_count())
    throw Error(ErrorCode::DimensionMismatch, "player index out of range");
  double payoff = 0.0;
  for (std::size_t s = 0; s < rho.dim(); ++s)
    payoff += rho.matrix()(s, s).real() * game.utility(player, s);
  return payoff;
}

// rho = sum_s p(s) |s><s|. Preserves the correlated-equilibrium property.
inline DensityState lift_diagonal(const ClassicalDistribution& p) {
  const std::size_t n = p.probabilities().size();
  ComplexMatrix m(n, n);
  for (std::size_t s = 0; s < n; ++s) m(s, s) = p[s];
  return DensityState(std::move(m));
}

// |psi> = sum_s sqrt(p(s)) |s>, rho = |psi><psi|. Shares the diagonal of the
// diagonal lift but the coherences can break the equilibrium property.
inline DensityState lift_pure(const ClassicalDistribution& p) {
  const std::size_t n = p.probabilities().size();
  CVector psi(n);
  for (std::size_t s = 0; s < n; ++s) psi[s] = std::sqrt(p[s]);
  return DensityState(outer(psi, psi));
}

}  // namespace qce

#endif  // QCE_STATE_HPP
