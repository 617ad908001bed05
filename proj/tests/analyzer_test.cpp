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

#include "qce/analyzer.hpp"
#include "test_support.hpp"

using namespace qce;

TEST_CASE("deviation family of the worked diagonal example") {
  const auto game = qce_test::pattern_game(2, 2);
  const auto fam = build_deviation_family(qce_test::maximally_mixed(4), game, 0);
  REQUIRE(fam.m == 2);
  REQUIRE(fam.n == 2);
  // B_1 = diag(0, 1/2), B_2 = diag(-1/2, 0)
  REQUIRE(std::abs(fam.matrices[0](0, 0)) < 1e-15);
  REQUIRE(fam.matrices[0](1, 1).real() == Catch::Approx(0.5));
  REQUIRE(fam.matrices[1](0, 0).real() == Catch::Approx(-0.5));
  REQUIRE(std::abs(fam.matrices[1](1, 1)) < 1e-15);
  REQUIRE(std::abs(fam.matrices[0](0, 1)) + std::abs(fam.matrices[0](1, 0)) < 1e-15);
}

TEST_CASE("deviation family of a basis state") {
  ComplexMatrix rho(4, 4);
  rho(0, 0) = 1.0;
  const StrategicGame game({2, 2}, {{2, 0, 0, 1}, {0, 0, 0, 0}});
  const auto fam = build_deviation_family(DensityState(std::move(rho)), game, 0);
  REQUIRE(fam.matrices[0].frobenius_norm() == 0.0);
  REQUIRE(fam.matrices[1](0, 0).real() == Catch::Approx(-2.0));
  REQUIRE(std::abs(fam.matrices[1](1, 1)) + std::abs(fam.matrices[1](0, 1)) +
              std::abs(fam.matrices[1](1, 0)) ==
          0.0);
}

TEST_CASE("single-strategy player has the zero family") {
  const StrategicGame game({1, 2}, {{1, 2}, {0, 0}});
  const auto fam = build_deviation_family(qce_test::maximally_mixed(2), game, 0);
  REQUIRE(fam.m == 1);
  REQUIRE(fam.matrices.size() == 1);
  REQUIRE(fam.matrices[0].frobenius_norm() == 0.0);
}

TEST_CASE("row i of B_i vanishes identically") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto game = qce_test::random_game({3, 2}, rng);
    const auto rho = qce_test::random_density(6, rng);
    const auto fam = build_deviation_family(rho, game, 0);
    for (std::size_t i = 0; i < fam.m; ++i)
      for (std::size_t c = 0; c < fam.m; ++c) REQUIRE(fam.matrices[i](i, c) == Complex(0.0, 0.0));
  }
}

TEST_CASE("povm_gain examples") {
  const auto game = qce_test::pattern_game(2, 2);
  const auto fam = build_deviation_family(qce_test::maximally_mixed(4), game, 0);
  SECTION("computational basis gains nothing") {
    REQUIRE(povm_gain(Povm::computational_basis(2), fam) == 0.0);
  }
  SECTION("all-in on outcome 1 gains tr(B_1) = 1/2") {
    std::vector<ComplexMatrix> effects{ComplexMatrix::identity(2), ComplexMatrix(2, 2)};
    REQUIRE(povm_gain(Povm(std::move(effects)), fam) == Catch::Approx(0.5));
  }
  SECTION("all-in on outcome 2 loses tr(B_2) = -1/2") {
    std::vector<ComplexMatrix> effects{ComplexMatrix(2, 2), ComplexMatrix::identity(2)};
    REQUIRE(povm_gain(Povm(std::move(effects)), fam) == Catch::Approx(-0.5));
  }
}

TEST_CASE("measurement oracle on the worked example") {
  const auto game = qce_test::pattern_game(2, 2);
  const auto rho = qce_test::maximally_mixed(4);
  std::vector<ComplexMatrix> effects{ComplexMatrix::identity(2), ComplexMatrix(2, 2)};
  REQUIRE(measurement_gain_oracle(rho, game, 0, Povm(std::move(effects))) == Catch::Approx(0.5));
  REQUIRE(measurement_gain_oracle(rho, game, 0, Povm::computational_basis(2)) ==
          Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("povm_gain equals the measurement oracle on random instances") {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<std::size_t> dim_dist(2, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<std::size_t> dims{dim_dist(rng), dim_dist(rng)};
    const std::size_t player = trial % 2;
    const auto game = qce_test::random_game(dims, rng);
    const auto rho = qce_test::random_density(joint_count(dims), rng);
    const auto povm = qce_test::random_povm(dims[player], rng);
    const auto fam = build_deviation_family(rho, game, player);
    const double direct = povm_gain(povm, fam);
    const double oracle = measurement_gain_oracle(rho, game, player, povm);
    REQUIRE(direct == Catch::Approx(oracle).margin(1e-10));
  }
}

TEST_CASE("measurement oracle rejects a non-POVM") {
  const auto game = qce_test::pattern_game(2, 2);
  std::vector<ComplexMatrix> effects{ComplexMatrix::identity(2), ComplexMatrix::identity(2)};
  REQUIRE_THROWS_MATCHES(
      measurement_gain_oracle(qce_test::maximally_mixed(4), game, 0, Povm(std::move(effects))),
      Error, Catch::Matchers::Predicate<Error>(
                 [](const Error& e) { return e.code() == ErrorCode::InvalidPovm; }));
}

TEST_CASE("hermitian condition") {
  SECTION("diagonal states always satisfy it") {
    std::mt19937_64 rng(33);
    const auto game = qce_test::random_game({2, 2}, rng);
    const auto p = qce_test::random_distribution({2, 2}, rng);
    const auto res = check_hermitian_condition(lift_diagonal(p), game, 0);
    REQUIRE(res.holds);
  }
  SECTION("coherent pair state with the swap payoff violates it at (1,2)") {
    const StrategicGame game({2, 2}, {{0, 1, 1, 0}, {0, 0, 0, 0}});
    const auto res = check_hermitian_condition(qce_test::coherent_pair_state(), game, 0);
    REQUIRE_FALSE(res.holds);
    REQUIRE(res.violating_pair->first == 0);
    REQUIRE(res.violating_pair->second == 1);
    REQUIRE(std::abs(res.left) < 1e-12);
    REQUIRE(res.right.real() == Catch::Approx(0.5));
  }
  SECTION("worked diagonal example satisfies it") {
    const auto game = qce_test::pattern_game(2, 2);
    REQUIRE(check_hermitian_condition(qce_test::maximally_mixed(4), game, 0).holds);
  }
  SECTION("family-level check agrees with the state-level check") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 20; ++trial) {
      const auto game = qce_test::random_game({3, 2}, rng);
      const auto rho = qce_test::random_density(6, rng);
      const auto fam = build_deviation_family(rho, game, 0);
      REQUIRE(check_hermitian_condition(fam).holds ==
              check_hermitian_condition(rho, game, 0).holds);
    }
  }
}

TEST_CASE("check_qce on the spec instances") {
  SECTION("diagonal lift of the battle-of-sexes CE is an equilibrium") {
    const ClassicalDistribution p({2, 2}, {0.5, 0.0, 0.0, 0.5});
    const auto verdict = check_qce(lift_diagonal(p), qce_test::battle_of_sexes());
    REQUIRE(verdict.is_qce);
  }
  SECTION("worked diagonal example is not; violation (player 1, i=1, lambda=1/2, e_2)") {
    const auto verdict = check_qce(qce_test::maximally_mixed(4), qce_test::pattern_game(2, 2));
    REQUIRE_FALSE(verdict.is_qce);
    REQUIRE(verdict.violations.size() == 1);
    const auto& v = verdict.violations.front();
    REQUIRE(v.player == 0);
    REQUIRE(v.strategy == 0);
    REQUIRE(v.lambda_max == Catch::Approx(0.5));
    REQUIRE(std::abs(v.witness[1]) == Catch::Approx(1.0));
    REQUIRE_FALSE(v.hermitian_condition_violated);
  }
  SECTION("basis state at a pure Nash equilibrium is an equilibrium") {
    ComplexMatrix rho(4, 4);
    rho(0, 0) = 1.0;  // profile (1,1) in battle of the sexes
    REQUIRE(check_qce(DensityState(std::move(rho)), qce_test::battle_of_sexes()).is_qce);
  }
  SECTION("hermitian-condition violations are flagged") {
    const StrategicGame game({2, 2}, {{0, 1, 1, 0}, {0, 0, 0, 0}});
    const auto verdict = check_qce(qce_test::coherent_pair_state(), game);
    REQUIRE_FALSE(verdict.is_qce);
    bool flagged = false;
    for (const auto& v : verdict.violations) flagged = flagged || v.hermitian_condition_violated;
    REQUIRE(flagged);
  }
}

TEST_CASE("diagonal-lift equivalence with the classical CE check") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 40; ++trial) {
    const std::vector<std::size_t> dims = trial % 2 == 0 ? std::vector<std::size_t>{2, 2}
                                                         : std::vector<std::size_t>{3, 2};
    const auto game = qce_test::random_game(dims, rng);
    const auto p = trial % 5 == 0
                       ? ClassicalDistribution(dims, std::vector<double>(joint_count(dims),
                                                                         1.0 / joint_count(dims)))
                       : qce_test::random_distribution(dims, rng);
    REQUIRE(check_qce(lift_diagonal(p), game).is_qce == classical_ce_check(p, game).holds);
  }
}

TEST_CASE("NE lifts pass check_qce under both maps") {
  const auto game = qce_test::matching_pennies();
  const std::vector<std::vector<double>> factors{{0.5, 0.5}, {0.5, 0.5}};
  REQUIRE(classical_ne_check(factors, game).holds);
  const auto p = product_distribution(factors, {2, 2});
  REQUIRE(check_qce(lift_diagonal(p), game).is_qce);
  REQUIRE(check_qce(lift_pure(p), game).is_qce);
}

TEST_CASE("payoff shift leaves the family unchanged; scaling scales it") {
  std::mt19937_64 rng(36);
  const auto game = qce_test::random_game({3, 2}, rng);
  const auto rho = qce_test::random_density(6, rng);
  const auto fam = build_deviation_family(rho, game, 0);

  auto u = std::vector<std::vector<double>>{game.utility_tensor(0), game.utility_tensor(1)};
  for (double& x : u[0]) x += 3.5;
  const auto fam_shift = build_deviation_family(rho, StrategicGame({3, 2}, u), 0);
  for (std::size_t i = 0; i < fam.m; ++i)
    REQUIRE((fam.matrices[i] - fam_shift.matrices[i]).frobenius_norm() < 1e-12);

  u = {game.utility_tensor(0), game.utility_tensor(1)};
  for (double& x : u[0]) x *= 2.0;
  const auto fam_scale = build_deviation_family(rho, StrategicGame({3, 2}, u), 0);
  for (std::size_t i = 0; i < fam.m; ++i)
    REQUIRE((fam.matrices[i] * Complex(2.0, 0.0) - fam_scale.matrices[i]).frobenius_norm() < 1e-12);
}

TEST_CASE("scaling the analyzed player's utilities keeps the verdict") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const auto game = qce_test::random_game({2, 2}, rng);
    const auto p = qce_test::random_distribution({2, 2}, rng);
    const auto rho = lift_diagonal(p);
    auto u = std::vector<std::vector<double>>{game.utility_tensor(0), game.utility_tensor(1)};
    for (auto& tensor : u)
      for (double& x : tensor) x *= 0.125;
    REQUIRE(check_qce(rho, game).is_qce == check_qce(rho, StrategicGame({2, 2}, u)).is_qce);
  }
}
