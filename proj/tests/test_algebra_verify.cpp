#include <doctest.h>

#include "lgks/algebra_verify.hpp"
#include "lgks/random.hpp"

using namespace lgks;

namespace {

LadderSpec random_spec(int d, Rng& rng, double lo = 1e-3, double hi = 1e3) {
  std::uniform_real_distribution<double> log_mag(std::log(lo), std::log(hi));
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  LadderSpec spec;
  spec.dim = d;
  for (int k = 0; k < d - 1; ++k) {
    spec.subdiagonal.push_back(std::polar(std::exp(log_mag(rng)), phase(rng)));
  }
  return spec;
}

}  // namespace

TEST_CASE("build_ladder") {
  CHECK((build_ladder({2, {1.0}}) - sigma_minus()).norm() == 0.0);

  const double r2 = std::sqrt(2.0);
  CHECK((build_ladder({3, {r2, r2}}) - spin_lowering(1.0)).norm() == 0.0);

  Rng rng(40);
  for (int trial = 0; trial < 20; ++trial) {
    const LadderSpec spec = random_spec(2 + static_cast<int>(rng() % 5), rng);
    CHECK(is_ladder_form(build_ladder(spec)) == LadderForm::lower);
  }

  CHECK_THROWS_AS(build_ladder({3, {1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_ladder({3, {1.0}}), std::invalid_argument);
}

TEST_CASE("prop1_oracle") {
  CHECK(prop1_oracle({2, {1.0}}).holds);

  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const PropOracleResult result = prop1_oracle(random_spec(6, rng));
    CHECK(result.holds);
    CHECK(result.commutant_dim == 1);
    CHECK_FALSE(result.borderline);
  }

  // An entry at 1e-12 numerically violates the nonzero hypothesis.
  const PropOracleResult tiny = prop1_oracle({3, {1.0, 1e-12}});
  CHECK(tiny.borderline);

  // Negative control: without the adjoint the commutant contains all
  // polynomials in the ladder operator.
  for (int d = 2; d <= 6; ++d) {
    const ComplexMatrix b = build_ladder(random_spec(d, rng));
    CHECK(commutant({b}).dimension >= 2);
  }
}

TEST_CASE("block_decompose") {
  Rng rng(42);

  // Blocks of a Kronecker product are the scaled second factor.
  const ComplexMatrix a = random_ginibre(2, 2, rng);
  const ComplexMatrix b = random_ginibre(3, 3, rng);
  const BlockDecomposition kron_blocks = block_decompose(kron(a, b), 2);
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      CHECK((kron_blocks.at(i, j) - a(i - 1, j - 1) * b).norm() == 0.0);
    }
  }

  const BlockDecomposition id_blocks =
      block_decompose(ComplexMatrix::Identity(4, 4), 2);
  CHECK((id_blocks.at(1, 1) - ComplexMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK((id_blocks.at(2, 2) - ComplexMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK(id_blocks.at(1, 2).norm() == 0.0);
  CHECK(id_blocks.at(2, 1).norm() == 0.0);

  // Reassembly is exact for any compatible shape.
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix x = random_ginibre(6, 6, rng);
    CHECK((reassemble(block_decompose(x, 2)) - x).norm() == 0.0);
    CHECK((reassemble(block_decompose(x, 3)) - x).norm() == 0.0);
  }

  CHECK_THROWS_AS(block_decompose(ComplexMatrix::Zero(6, 6), 4), DimensionError);
  CHECK_THROWS_AS(block_decompose(ComplexMatrix::Zero(2, 3), 1), DimensionError);
}

TEST_CASE("prop2_oracle") {
  Rng rng(43);

  // N = 1 coincides with the single-system oracle.
  for (int trial = 0; trial < 10; ++trial) {
    const LadderSpec spec = random_spec(4, rng);
    CHECK(prop2_oracle({spec}).holds == prop1_oracle(spec).holds);
  }

  // Two qubits with unit ladders: the 64 x 16 stacked map has a
  // one-dimensional kernel.
  const PropOracleResult qubits = prop2_oracle({{2, {1.0}}, {2, {1.0}}});
  CHECK(qubits.holds);
  CHECK(qubits.commutant_dim == 1);

  CHECK(prop2_oracle({{2, {1.0}}, {2, {1.0}}, {2, {1.0}}}).holds);

  // Mixed factor dimensions.
  CHECK(prop2_oracle({random_spec(2, rng), random_spec(3, rng)}).holds);
  CHECK(prop2_oracle({random_spec(3, rng), random_spec(3, rng)}).holds);

  CHECK_THROWS_AS(prop2_oracle({}), std::invalid_argument);
  CHECK_THROWS_AS(
      prop2_oracle({random_spec(5, rng), random_spec(5, rng)}, kDefaultTol, 20),
      std::invalid_argument);
}
