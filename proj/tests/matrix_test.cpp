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

#include <catch_amalgamated.hpp>

#include "qce/bipartition.hpp"
#include "qce/hermitian.hpp"
#include "qce/matrix.hpp"
#include "test_support.hpp"

using namespace qce;
using qce_test::random_hermitian;

namespace {

double reconstruction_residual(const ComplexMatrix& a, const HermitianSpectrum& s) {
  return (a - s.reconstruct()).frobenius_norm();
}

double orthonormality_defect(const HermitianSpectrum& s) {
  const ComplexMatrix& v = s.eigenvectors;
  return (v.adjoint() * v - ComplexMatrix::identity(v.rows())).frobenius_norm();
}

}  // namespace

TEST_CASE("herm_eig on the identity") {
  const auto s = herm_eig(ComplexMatrix::identity(2));
  REQUIRE(s.eigenvalues[0] == Catch::Approx(1.0));
  REQUIRE(s.eigenvalues[1] == Catch::Approx(1.0));
}

TEST_CASE("herm_eig on the standard antisymmetric 2x2 Hermitian") {
  ComplexMatrix a(2, 2);
  a(0, 1) = Complex(0.0, -1.0);
  a(1, 0) = Complex(0.0, 1.0);
  const auto s = herm_eig(a);
  REQUIRE(s.eigenvalues[0] == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(s.eigenvalues[1] == Catch::Approx(-1.0).margin(1e-12));
  REQUIRE(reconstruction_residual(a, s) <= 1e-10);
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_hermitian(4, rng);
    const auto s = herm_eig(a);
    REQUIRE(reconstruction_residual(a, s) <= 1e-10 * std::max(1.0, a.frobenius_norm()));
    REQUIRE(orthonormality_defect(s) <= 1e-10);
    REQUIRE(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));
  }
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  ComplexMatrix a(2, 2);
  a(0, 1) = 1.0;  // no conjugate partner
  REQUIRE_THROWS_MATCHES(herm_eig(a), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == ErrorCode::NotHermitian;
                         }));
}

TEST_CASE("eigenvalue sum equals trace") {
  std::mt19937_64 rng(12);
  for (std::size_t n : {1, 2, 3, 5, 8}) {
    const ComplexMatrix a = random_hermitian(n, rng);
    const auto s = herm_eig(a);
    double sum = 0.0;
    for (double w : s.eigenvalues) sum += w;
    REQUIRE(sum == Catch::Approx(a.trace().real()).epsilon(1e-10).margin(1e-10));
  }
}

TEST_CASE("eigenvalues scale with the matrix") {
  std::mt19937_64 rng(13);
  const ComplexMatrix a = random_hermitian(5, rng);
  const auto s1 = herm_eig(a);
  const auto s2 = herm_eig(a * Complex(-2.5, 0.0));
  for (std::size_t k = 0; k < 5; ++k)
    REQUIRE(s2.eigenvalues[k] ==
            Catch::Approx(-2.5 * s1.eigenvalues[4 - k]).epsilon(1e-10).margin(1e-12));
}

TEST_CASE("nsd_check examples") {
  SECTION("zero matrix is NSD") {
    REQUIRE(nsd_check(ComplexMatrix(2, 2)).is_nsd);
  }
  SECTION("diag(0, 1/2) fails with witness (1/2, e_2)") {
    ComplexMatrix a(2, 2);
    a(1, 1) = 0.5;
    const auto res = nsd_check(a);
    REQUIRE_FALSE(res.is_nsd);
    REQUIRE(res.lambda_max == Catch::Approx(0.5));
    REQUIRE(std::abs(res.witness[1]) == Catch::Approx(1.0));
    REQUIRE(std::abs(res.witness[0]) < 1e-12);
  }
  SECTION("diag(-1/2, 0) is NSD") {
    ComplexMatrix a(2, 2);
    a(0, 0) = -0.5;
    REQUIRE(nsd_check(a).is_nsd);
  }
}

TEST_CASE("nsd_check of A and -A forces a negligible matrix") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_hermitian(3, rng);
    const bool both = nsd_check(a).is_nsd && nsd_check(a * Complex(-1.0, 0.0)).is_nsd;
    if (both) REQUIRE(a.frobenius_norm() <= 1e-9 * 3);
  }
}

TEST_CASE("bipartition diagonal blocks") {
  SECTION("basis state |11><11| on a 2x2 system, player 1") {
    ComplexMatrix rho(4, 4);
    rho(0, 0) = 1.0;
    const auto blocks = bipartition_diag_blocks(rho, 0, {2, 2});
    REQUIRE(blocks.size() == 2);
    REQUIRE(blocks[0](0, 0) == Complex(1.0, 0.0));
    double rest = 0.0;
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t i1 = 0; i1 < 2; ++i1)
        for (std::size_t i2 = 0; i2 < 2; ++i2)
          if (!(j == 0 && i1 == 0 && i2 == 0)) rest += std::abs(blocks[j](i1, i2));
    REQUIRE(rest == 0.0);
  }
  SECTION("maximally mixed state gives delta/4") {
    const auto rho = qce_test::maximally_mixed(4);
    const auto blocks = bipartition_diag_blocks(rho.matrix(), 0, {2, 2});
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t i1 = 0; i1 < 2; ++i1)
        for (std::size_t i2 = 0; i2 < 2; ++i2)
          REQUIRE(std::abs(blocks[j](i1, i2) - (i1 == i2 ? Complex(0.25, 0.0) : Complex(0.0, 0.0))) <
                  1e-15);
  }
  SECTION("coherent pair state keeps the off-diagonal block") {
    const auto rho = qce_test::coherent_pair_state();
    const auto blocks = bipartition_diag_blocks(rho.matrix(), 0, {2, 2});
    REQUIRE(std::abs(blocks[0](0, 1) - Complex(0.5, 0.0)) < 1e-15);
    REQUIRE(std::abs(blocks[1](0, 1)) < 1e-15);
  }
  SECTION("player 2 of a 2x3 system, conjugate symmetry and trace") {
    std::mt19937_64 rng(15);
    const auto rho = qce_test::random_density(6, rng);
    const auto blocks = bipartition_diag_blocks(rho.matrix(), 1, {2, 3});
    REQUIRE(blocks.size() == 2);
    REQUIRE(blocks[0].rows() == 3);
    Complex tr = 0.0;
    for (const auto& b : blocks) {
      for (std::size_t i1 = 0; i1 < 3; ++i1)
        for (std::size_t i2 = 0; i2 < 3; ++i2)
          REQUIRE(std::abs(b(i1, i2) - std::conj(b(i2, i1))) < 1e-12);
      tr += b.trace();
    }
    REQUIRE(tr.real() == Catch::Approx(1.0).epsilon(1e-12));
  }
  SECTION("dimension mismatch") {
    REQUIRE_THROWS_AS(bipartition_diag_blocks(ComplexMatrix::identity(4), 0, {2, 3}), Error);
  }
}
