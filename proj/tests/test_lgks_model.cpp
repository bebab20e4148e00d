#include <doctest.h>

#include <algorithm>

#include "lgks/lgks_model.hpp"
#include "lgks/random.hpp"
#include "lgks/superoperator.hpp"

using namespace lgks;

namespace {

const ComplexMatrix kHalfSigmaZ = 0.5 * sigma_z();

bool mentions(const std::vector<ValidationIssue>& issues, const std::string& key) {
  return std::any_of(issues.begin(), issues.end(), [&](const ValidationIssue& i) {
    return i.message.find(key) != std::string::npos;
  });
}

// Sorted-by-real-part spectra compare equal for unitarily equivalent models.
std::vector<Complex> sorted_spectrum(const LgksModel& model) {
  ComplexVector ev = eigenvalues(build_liouvillian(model).matrix);
  std::vector<Complex> out(ev.begin(), ev.end());
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

}  // namespace

TEST_CASE("validate") {
  CHECK(validate(two_level_T0(1.0, kHalfSigmaZ)).empty());

  LgksModel bad_rate = two_level_T0(1.0, kHalfSigmaZ);
  bad_rate.channels[0].rate = -1.0;
  CHECK(mentions(validate(bad_rate), "non-positive rate, channel 1"));

  LgksModel bad_h = two_level_T0(1.0, kHalfSigmaZ);
  bad_h.hamiltonian = sigma_plus();
  const auto issues = validate(bad_h);
  REQUIRE(mentions(issues, "not Hermitian"));
  for (const auto& issue : issues) {
    if (issue.message.find("not Hermitian") != std::string::npos) {
      CHECK(issue.residual == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }
  }

  LgksModel bad_layout = two_level_T0(1.0, kHalfSigmaZ);
  bad_layout.layout = CompositeLayout{{2, 2}};
  CHECK(mentions(validate(bad_layout), "do not multiply"));

  LgksModel bad_op = two_level_T0(1.0, kHalfSigmaZ);
  bad_op.channels[0].op = ComplexMatrix::Zero(3, 3);
  CHECK(mentions(validate(bad_op), "not dim x dim"));

  CHECK_THROWS_AS(require_valid(bad_rate), std::invalid_argument);
}

TEST_CASE("two_level_T0") {
  const LgksModel model = two_level_T0(1.0, kHalfSigmaZ);
  CHECK(model.dim == 2);
  REQUIRE(model.channels.size() == 1);
  CHECK(model.channels[0].rate == 1.0);
  CHECK((model.channels[0].op - sigma_minus()).norm() == 0.0);
  CHECK(validate(model).empty());
  CHECK_THROWS_AS(two_level_T0(1.0, sigma_plus()), std::invalid_argument);
  CHECK_THROWS_AS(two_level_T0(-2.0, kHalfSigmaZ), std::invalid_argument);
}

TEST_CASE("two_level_finite_T") {
  const LgksModel model = two_level_finite_T(1.0, 1.0, kHalfSigmaZ);
  REQUIRE(model.channels.size() == 2);
  CHECK(model.channels[0].rate == doctest::Approx(2.0));
  CHECK((model.channels[0].op - sigma_minus()).norm() == 0.0);
  CHECK(model.channels[1].rate == doctest::Approx(1.0));
  CHECK((model.channels[1].op - sigma_plus()).norm() == 0.0);

  // nbar = 0 drops the absorption channel and reproduces the T = 0 model,
  // Liouvillian entry by entry.
  const LgksModel frozen = two_level_finite_T(0.8, 0.0, kHalfSigmaZ);
  const LgksModel t0 = two_level_T0(0.8, kHalfSigmaZ);
  REQUIRE(frozen.channels.size() == 1);
  CHECK((build_liouvillian(frozen).matrix - build_liouvillian(t0).matrix)
            .norm() == 0.0);

  CHECK_THROWS_AS(two_level_finite_T(1.0, -0.1, kHalfSigmaZ),
                  std::invalid_argument);
}

TEST_CASE("n_level_atom") {
  const LgksModel model = n_level_atom(3, {1, 1}, {0.5, 0.5});
  REQUIRE(model.channels.size() == 4);
  CHECK((model.channels[0].op - matrix_unit(1, 2, 3)).norm() == 0.0);
  CHECK((model.channels[1].op - matrix_unit(2, 3, 3)).norm() == 0.0);
  CHECK((model.channels[2].op - matrix_unit(2, 1, 3)).norm() == 0.0);
  CHECK((model.channels[3].op - matrix_unit(3, 2, 3)).norm() == 0.0);
  CHECK(validate(model).empty());

  // The emission sum is a one-sided ladder: strictly superdiagonal with all
  // entries present.
  ComplexMatrix sum = ComplexMatrix::Zero(3, 3);
  for (int i = 0; i < 2; ++i) sum += model.channels[i].op;
  for (int k = 0; k < 2; ++k) CHECK(std::abs(sum(k, k + 1)) == 1.0);
  CHECK(std::abs(sum(1, 0)) == 0.0);
  CHECK(std::abs(sum(2, 0)) == 0.0);

  // Zero up-rates drop channels entirely.
  CHECK(n_level_atom(4, {1, 1, 1}, {0, 0, 0}).channels.size() == 3);

  // d=2 pure decay is the T=0 two-level problem up to a basis relabeling:
  // same Liouvillian spectrum as multisets.
  const auto a = sorted_spectrum(n_level_atom(2, {1.0}, {0.0},
                                              ComplexMatrix(kHalfSigmaZ)));
  const auto b = sorted_spectrum(two_level_T0(1.0, kHalfSigmaZ));
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);

  CHECK_THROWS_AS(n_level_atom(1, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(n_level_atom(3, {1}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(n_level_atom(3, {1, -1}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(n_level_atom(3, {1, 1}, {0, -2}), std::invalid_argument);
}

TEST_CASE("spin_lowering") {
  CHECK((spin_lowering(0.5) - sigma_minus()).norm() == 0.0);

  const ComplexMatrix s1 = spin_lowering(1.0);
  REQUIRE(s1.rows() == 3);
  CHECK(std::abs(s1(1, 0)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(s1(2, 1)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(s1.cwiseAbs().sum() == doctest::Approx(2 * std::sqrt(2.0)));

  for (double spin : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5}) {
    const ComplexMatrix s = spin_lowering(spin);
    const int d = static_cast<int>(s.rows());
    CHECK(d == static_cast<int>(2 * spin) + 1);
    for (int k = 1; k < d; ++k) CHECK(std::abs(s(k, k - 1)) > 0.0);
    // strictly subdiagonal
    ComplexMatrix off = s;
    for (int k = 1; k < d; ++k) off(k, k - 1) = 0.0;
    CHECK(off.norm() == 0.0);
  }

  CHECK_THROWS_AS(spin_lowering(0.0), std::invalid_argument);
  CHECK_THROWS_AS(spin_lowering(0.75), std::invalid_argument);
}

TEST_CASE("truncated_annihilation") {
  CHECK((truncated_annihilation(1) - matrix_unit(1, 2, 2)).norm() == 0.0);

  const ComplexMatrix a3 = truncated_annihilation(3);
  REQUIRE(a3.rows() == 4);
  CHECK(std::abs(a3(0, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(a3(1, 2)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(a3(2, 3)) == doctest::Approx(std::sqrt(3.0)));

  for (int n_max : {1, 2, 5, 10}) {
    const ComplexMatrix a = truncated_annihilation(n_max);
    const ComplexMatrix number = a.adjoint() * a;
    for (int n = 0; n <= n_max; ++n) {
      CHECK(std::abs(number(n, n) - Complex(n, 0)) < 1e-13);
    }
    CHECK((number - ComplexMatrix(number.diagonal().asDiagonal())).norm() <
          1e-13);
  }

  CHECK_THROWS_AS(truncated_annihilation(0), std::invalid_argument);
}

TEST_CASE("embed_local") {
  const CompositeLayout two_qubits{{2, 2}};
  CHECK((embed_local(sigma_minus(), 1, two_qubits) -
         kron(sigma_minus(), ComplexMatrix::Identity(2, 2))).norm() == 0.0);
  CHECK((embed_local(sigma_minus(), 2, two_qubits) -
         kron(ComplexMatrix::Identity(2, 2), sigma_minus())).norm() == 0.0);

  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = random_ginibre(2, 2, rng);
    const ComplexMatrix b = random_ginibre(2, 2, rng);
    CHECK(commutator(embed_local(a, 1, two_qubits),
                     embed_local(b, 2, two_qubits)).norm() < 1e-13);
  }

  // Frobenius norm scales by sqrt of the product of the other dimensions.
  const CompositeLayout mixed{{2, 3, 2}};
  const ComplexMatrix op = random_ginibre(3, 3, rng);
  CHECK(embed_local(op, 2, mixed).norm() ==
        doctest::Approx(op.norm() * 2.0).epsilon(1e-12));

  CHECK_THROWS_AS(embed_local(op, 1, mixed), DimensionError);
  CHECK_THROWS_AS(embed_local(op, 4, mixed), DimensionError);
}

TEST_CASE("dephasing_two_level") {
  const LgksModel model = dephasing_two_level(1.0, kHalfSigmaZ);
  REQUIRE(model.channels.size() == 1);
  CHECK((model.channels[0].op - sigma_z()).norm() == 0.0);
  CHECK(validate(model).empty());
  CHECK_THROWS_AS(dephasing_two_level(0.0, kHalfSigmaZ), std::invalid_argument);
}

TEST_CASE("atom_lattice") {
  const LgksModel local = two_level_T0(1.0, kHalfSigmaZ);
  const LgksModel pair = atom_lattice(2, local, std::nullopt);
  CHECK(pair.dim == 4);
  REQUIRE(pair.layout.has_value());
  CHECK(pair.layout->factor_dims == std::vector<int>{2, 2});
  REQUIRE(pair.channels.size() == 2);
  CHECK((pair.channels[0].op -
         kron(sigma_minus(), ComplexMatrix::Identity(2, 2))).norm() == 0.0);
  CHECK((pair.channels[1].op -
         kron(ComplexMatrix::Identity(2, 2), sigma_minus())).norm() == 0.0);
  const ComplexMatrix want_h =
      kron(kHalfSigmaZ, ComplexMatrix::Identity(2, 2)) +
      kron(ComplexMatrix::Identity(2, 2), kHalfSigmaZ);
  CHECK((pair.hamiltonian - want_h).norm() == 0.0);
  CHECK(validate(pair).empty());

  // With exchange coupling the Hamiltonian stays Hermitian and gains the
  // hopping term sigma+_1 sigma-_2 + h.c.
  const LgksModel coupled = atom_lattice(2, local, 0.5);
  CHECK(validate(coupled).empty());
  const ComplexMatrix hop = kron(sigma_plus(), sigma_minus());
  CHECK((coupled.hamiltonian - want_h - 0.5 * (hop + hop.adjoint())).norm() <
        1e-14);

  CHECK(atom_lattice(3, local).dim == 8);
  CHECK_THROWS_AS(atom_lattice(2, local, std::nullopt, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(atom_lattice(0, local), std::invalid_argument);
}

TEST_CASE("zoo constructors validate") {
  CHECK(validate(two_level_T0(0.3, kHalfSigmaZ)).empty());
  CHECK(validate(two_level_finite_T(0.3, 2.5, kHalfSigmaZ)).empty());
  CHECK(validate(n_level_atom(5, {1, 2, 3, 4}, {0.1, 0, 0.3, 0})).empty());
  CHECK(validate(dephasing_two_level(0.7, kHalfSigmaZ)).empty());
  CHECK(validate(atom_lattice(2, two_level_finite_T(1, 1, kHalfSigmaZ), 0.2))
            .empty());
}
