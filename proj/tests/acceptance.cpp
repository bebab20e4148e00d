// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerances and runtime budget in code.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "lgks/algebra_verify.hpp"
#include "lgks/model_io.hpp"
#include "lgks/random.hpp"
#include "lgks/version.hpp"

using namespace lgks;

namespace {

const ComplexMatrix kHalfSigmaZ = 0.5 * sigma_z();

int g_failures = 0;
std::ostringstream g_detail;

#define EXPECT(cond)                                                       \
  do {                                                                     \
    if (!(cond)) {                                                         \
      g_detail << "    failed: " << #cond << " (" << __FILE__ << ":"       \
               << __LINE__ << ")\n";                                       \
      ok = false;                                                          \
    }                                                                      \
  } while (0)

void criterion(int id, const std::string& label, double budget_seconds,
               const std::function<bool()>& body) {
  g_detail.str("");
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string error;
  try {
    ok = body();
  } catch (const std::exception& err) {
    error = err.what();
    ok = false;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (budget_seconds > 0 && elapsed > budget_seconds) {
    g_detail << "    runtime " << elapsed << " s exceeds budget "
             << budget_seconds << " s\n";
    ok = false;
  }
  std::printf("[%s] criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", id,
              label.c_str(), elapsed);
  if (!error.empty()) std::printf("    exception: %s\n", error.c_str());
  const std::string detail = g_detail.str();
  if (!ok && !detail.empty()) std::fputs(detail.c_str(), stdout);
  if (!ok) ++g_failures;
}

LgksModel random_model(Rng& rng) {
  std::uniform_real_distribution<double> rate(0.1, 10.0);
  LgksModel model;
  model.dim = 2 + static_cast<int>(rng() % 3);
  model.hamiltonian = random_hermitian(model.dim, rng);
  const int n_channels = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < n_channels; ++i) {
    model.channels.push_back({rate(rng), random_ginibre(model.dim, model.dim, rng)});
  }
  model.name = "random";
  return model;
}

std::vector<LgksModel> zoo() {
  return {
      two_level_T0(1.0, kHalfSigmaZ),
      two_level_finite_T(1.0, 1.0, kHalfSigmaZ),
      dephasing_two_level(1.0, kHalfSigmaZ),
      n_level_atom(3, {1, 1}, {0.5, 0.5}),
      n_level_atom(4, {1, 1, 1}, {0, 0, 0}),
      atom_lattice(2, two_level_T0(1.0, kHalfSigmaZ)),
      atom_lattice(3, two_level_T0(1.0, kHalfSigmaZ)),
      atom_lattice(2, two_level_T0(1.0, kHalfSigmaZ), 0.5),
  };
}

const CriterionVerdict& verdict_of(const AuditReport& report,
                                   const std::string& name) {
  for (const CriterionVerdict& v : report.verdicts) {
    if (v.criterion == name) return v;
  }
  throw std::logic_error("missing verdict " + name);
}

bool criterion_two_level_T0() {
  bool ok = true;
  const double gamma = 1.0;
  const LgksModel model = two_level_T0(gamma, kHalfSigmaZ);

  // The worked 3x3 coefficient matrix, entry by entry.
  const CMatrix c = build_c_matrix(model);
  ComplexMatrix want(3, 3);
  want << gamma / 2, Complex(0, gamma / 2), 0,
          Complex(0, -gamma / 2), gamma / 2, 0,
          0, 0, 0;
  EXPECT((c.matrix - want).norm() <= 1e-12);

  // Two-fold degenerate zero eigenvalue: p = 2, the rank criterion fails.
  const HermitianEigenResult eig = hermitian_eigen(c.matrix);
  EXPECT(std::abs(eig.values(0)) <= 1e-12);
  EXPECT(std::abs(eig.values(1)) <= 1e-12);
  EXPECT(std::abs(eig.values(2) - gamma) <= 1e-12);

  const AuditReport report = audit(model);
  EXPECT(verdict_of(report, "spohn-rank").evidence.at("p") == 2);
  EXPECT(!verdict_of(report, "spohn-rank").passed);

  // span{sigma-} is not self-adjoint: the operator criteria do not apply.
  EXPECT(!is_self_adjoint_span({sigma_minus()}).self_adjoint);
  EXPECT(!verdict_of(report, "spohn-span").applicable);
  EXPECT(!verdict_of(report, "frigerio").applicable);

  // Evans: {H, sigma-, sigma+}' is trivial, and the oracle agrees.
  EXPECT(commutant({model.hamiltonian, sigma_minus(), sigma_plus()}).dimension ==
         1);
  EXPECT(verdict_of(report, "evans").passed);
  EXPECT(report.oracle_ok);
  EXPECT(report.oracle.multiplicity == 1);
  EXPECT(report.consistent);
  return ok;
}

bool criterion_two_level_finite_T() {
  bool ok = true;
  for (double nbar : {1.0, 0.4}) {
    const LgksModel model = two_level_finite_T(1.0, nbar, kHalfSigmaZ);
    const AuditReport report = audit(model);
    EXPECT(verdict_of(report, "spohn-span").passed);
    EXPECT(verdict_of(report, "frigerio").passed);
    EXPECT(report.oracle.multiplicity == 1);

    // Independent rate-balance oracle: diag(nbar, 1+nbar) / (1+2 nbar).
    const double denom = 1.0 + 2.0 * nbar;
    ComplexMatrix want = ComplexMatrix::Zero(2, 2);
    want(0, 0) = nbar / denom;
    want(1, 1) = (1.0 + nbar) / denom;
    EXPECT(report.oracle.extraction_ok);
    EXPECT((report.oracle.states.front() - want).norm() <= 1e-9);

    // Faithful steady state.
    const HermitianEigenResult eig =
        hermitian_eigen(report.oracle.states.front(), 1e-6);
    EXPECT(eig.values.minCoeff() > 0.0);
    EXPECT(verdict_of(report, "frigerio").evidence.at("faithful") == 1.0);
  }
  return ok;
}

bool criterion_soundness_sweep() {
  bool ok = true;
  Rng rng(2024);
  const AuditOptions options{1e-7, 11, 32};
  int evans_pass = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const LgksModel model = random_model(rng);
    const AuditReport report = audit(model, options);
    EXPECT(report.oracle_ok);
    if (!report.oracle_ok) continue;
    const bool unique = report.oracle.multiplicity == 1;
    for (const CriterionVerdict& v : report.verdicts) {
      if (v.passed && !unique) {
        g_detail << "    unsound: " << v.criterion << " passed on trial "
                 << trial << " with multiplicity "
                 << report.oracle.multiplicity << "\n";
        ok = false;
      }
    }
    const bool evans = verdict_of(report, "evans").passed;
    if (evans != unique) {
      g_detail << "    evans mismatch on trial " << trial << "\n";
      ok = false;
    }
    if (evans) ++evans_pass;
  }
  // Sanity on the ensemble itself: random channels overwhelmingly give a
  // unique steady state, so the equivalence must have been exercised.
  EXPECT(evans_pass >= 90);
  return ok;
}

bool criterion_appendix_oracles() {
  bool ok = true;
  Rng rng(77);
  std::uniform_real_distribution<double> log_mag(std::log(1e-3), std::log(1e3));
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  auto make_spec = [&](int d) {
    LadderSpec spec;
    spec.dim = d;
    for (int k = 0; k < d - 1; ++k) {
      spec.subdiagonal.push_back(std::polar(std::exp(log_mag(rng)), phase(rng)));
    }
    return spec;
  };

  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 7);  // up to 8
    const PropOracleResult result = prop1_oracle(make_spec(d));
    if (!result.holds || result.borderline) {
      g_detail << "    prop1 failed at trial " << trial << " d=" << d << "\n";
      ok = false;
    }
  }

  const std::vector<std::vector<int>> factorizations = {
      {2}, {3}, {2, 2}, {2, 3}, {3, 3}, {2, 2, 2}, {2, 2, 3}, {2, 3, 3},
      {3, 3, 3}};
  for (const auto& dims : factorizations) {
    std::vector<LadderSpec> specs;
    for (int d : dims) specs.push_back(make_spec(d));
    const PropOracleResult result = prop2_oracle(specs);
    if (!result.holds) {
      g_detail << "    prop2 failed for factors";
      for (int d : dims) g_detail << " " << d;
      g_detail << "\n";
      ok = false;
    }
  }

  // Negative control: the ladder alone (without its adjoint) always has a
  // commutant of dimension >= 2.
  for (int d = 2; d <= 6; ++d) {
    EXPECT(commutant({build_ladder(make_spec(d))}).dimension >= 2);
  }
  return ok;
}

bool criterion_generator_contracts() {
  bool ok = true;
  Rng rng(31415);

  // Applicative contract of the assembled superoperator.
  for (int trial = 0; trial < 100; ++trial) {
    const LgksModel model = random_model(rng);
    const ComplexMatrix rho = random_ginibre(model.dim, model.dim, rng);
    const ComplexMatrix direct = apply_generator(model, rho);
    const ComplexMatrix via =
        unvec(build_liouvillian(model).matrix * vec(rho), model.dim);
    EXPECT((via - direct).norm() <= 1e-12 * std::max(1.0, direct.norm()));
  }

  // Duality pairing between the two pictures.
  for (int trial = 0; trial < 50; ++trial) {
    const LgksModel model = random_model(rng);
    const ComplexMatrix rho = random_ginibre(model.dim, model.dim, rng);
    const ComplexMatrix obs = random_ginibre(model.dim, model.dim, rng);
    const Complex lhs = (obs * apply_generator(model, rho)).trace();
    const Complex rhs = (apply_adjoint_generator(model, obs) * rho).trace();
    EXPECT(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(lhs)));
  }

  // Trace preservation, Hermiticity preservation, the semigroup law, and
  // positivity along sampled trajectories.
  for (int trial = 0; trial < 20; ++trial) {
    const LgksModel model = random_model(rng);
    const ComplexMatrix rho0 = random_density_matrix(model.dim, rng);
    const ComplexMatrix one = evolve(model, rho0, 0.7);
    const ComplexMatrix two = evolve(model, evolve(model, rho0, 0.3), 0.4);
    EXPECT((one - two).norm() <= 1e-9);
    EXPECT(std::abs(one.trace() - Complex(1, 0)) <= 1e-9);
    EXPECT((one - one.adjoint()).norm() <= 1e-9);
    for (double t : {0.1, 1.0, 4.0}) {
      const ComplexMatrix rho_t = evolve(model, rho0, t);
      const ComplexMatrix herm = 0.5 * (rho_t + rho_t.adjoint());
      EXPECT(hermitian_eigen(herm, 1e-6).values.minCoeff() >= -1e-8);
    }
  }
  return ok;
}

bool criterion_spectral_facts() {
  bool ok = true;
  for (const LgksModel& model : zoo()) {
    const SpectrumReport report = spectrum_report(model);
    EXPECT(report.max_real_part <= 1e-10);
    EXPECT(report.pure_imaginary == 0);
  }

  // Closed-form spectrum of the zero-temperature two-level problem.
  for (const auto& [gamma, omega] : std::vector<std::pair<double, double>>{
           {1.0, 1.0}, {2.0, 0.7}}) {
    const SpectrumReport report = spectrum_report(
        two_level_T0(gamma, ComplexMatrix(0.5 * omega * sigma_z())));
    std::vector<Complex> got(report.eigenvalues.begin(),
                             report.eigenvalues.end());
    std::sort(got.begin(), got.end(), [](Complex a, Complex b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    const std::vector<Complex> want = {
        Complex(-gamma, 0), Complex(-gamma / 2, -omega),
        Complex(-gamma / 2, omega), Complex(0, 0)};
    for (int i = 0; i < 4; ++i) EXPECT(std::abs(got[i] - want[i]) <= 1e-9);
    EXPECT(std::abs(report.gap - gamma / 2) <= 1e-9);
  }
  return ok;
}

bool criterion_composite() {
  bool ok = true;
  for (int sites : {2, 3}) {
    const LgksModel lattice = atom_lattice(sites, two_level_T0(1.0, kHalfSigmaZ));
    const AuditReport report = audit(lattice);
    EXPECT(verdict_of(report, "corollary-2").passed);
    EXPECT(verdict_of(report, "theorem-2").passed);
    EXPECT(report.oracle.multiplicity == 1);
  }

  // Starve one site of dissipation (no coupling): corollary 2 flips and the
  // steady state degenerates.
  LgksModel starved = atom_lattice(2, two_level_T0(1.0, kHalfSigmaZ));
  starved.channels.pop_back();
  const AuditReport report = audit(starved);
  EXPECT(!verdict_of(report, "corollary-2").passed);
  EXPECT(report.oracle.multiplicity > 1);
  return ok;
}

bool criterion_basis_invariance() {
  bool ok = true;
  Rng rng(271828);
  const std::array<const char*, 6> invariant_names = {
      "spohn-rank", "spohn-span", "frigerio", "evans", "theorem-1",
      "theorem-2"};
  for (const LgksModel& model : zoo()) {
    const AuditReport base = audit(model);
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix u = random_unitary(model.dim, rng);
      LgksModel rotated = model;
      rotated.hamiltonian = u * model.hamiltonian * u.adjoint();
      for (size_t i = 0; i < model.channels.size(); ++i) {
        rotated.channels[i].op = u * model.channels[i].op * u.adjoint();
      }
      rotated.layout.reset();  // tensor structure does not survive rotation
      const AuditReport rot = audit(rotated);
      for (const char* name : invariant_names) {
        if (verdict_of(base, name).passed != verdict_of(rot, name).passed ||
            verdict_of(base, name).applicable !=
                verdict_of(rot, name).applicable) {
          g_detail << "    " << model.name << ": " << name
                   << " changed under conjugation (trial " << trial << ")\n";
          ok = false;
        }
      }
      if (base.oracle.multiplicity != rot.oracle.multiplicity) {
        g_detail << "    " << model.name << ": multiplicity changed (trial "
                 << trial << ")\n";
        ok = false;
      }
      if (std::abs(verdict_of(base, "spohn-rank").evidence.at("p") -
                   verdict_of(rot, "spohn-rank").evidence.at("p")) > 1e-8) {
        g_detail << "    " << model.name << ": p changed (trial " << trial
                 << ")\n";
        ok = false;
      }
    }
  }
  return ok;
}

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string command = std::string(LGKS_CLI_PATH) + " " + args;
  CliResult result;
  std::array<char, 4096> buffer{};
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

bool criterion_cli_determinism() {
  bool ok = true;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("lgks_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const LgksModel& model) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << emit_model(model);
    return path.string();
  };

  const std::string unique_path = write("t0.json", two_level_T0(1.0, kHalfSigmaZ));
  const std::string degenerate_path =
      write("dephasing.json", dephasing_two_level(1.0, kHalfSigmaZ));

  const std::string args = "audit " + unique_path + " --format machine --seed 42";
  const CliResult first = run_cli(args);
  const CliResult second = run_cli(args);
  EXPECT(first.exit_code == 0);
  EXPECT(!first.output.empty());
  EXPECT(first.output == second.output);

  // Exit codes follow the oracle multiplicity and the input status.
  EXPECT(run_cli("audit " + degenerate_path + " --format machine").exit_code == 1);
  LgksModel bad = two_level_T0(1.0, kHalfSigmaZ);
  bad.channels[0].rate = -1.0;
  const std::string bad_path = write("bad.json", bad);
  EXPECT(run_cli("audit " + bad_path + " 2>/dev/null").exit_code == 2);
  return ok;
}

}  // namespace

int main() {
  std::printf("acceptance suite (%s %s)\n", kToolName, kToolVersion);
  criterion(1, "two-level T=0 narrative reproduced", 1.0,
            criterion_two_level_T0);
  criterion(2, "two-level finite-T faithful steady state", 1.0,
            criterion_two_level_finite_T);
  criterion(3, "soundness sweep over 100 random models", 120.0,
            criterion_soundness_sweep);
  criterion(4, "ladder commutant oracles (props 1-2)", 120.0,
            criterion_appendix_oracles);
  criterion(5, "generator contracts", 0.0, criterion_generator_contracts);
  criterion(6, "spectral facts on the zoo", 0.0, criterion_spectral_facts);
  criterion(7, "composite criteria flip with missing dissipation", 60.0,
            criterion_composite);
  criterion(8, "basis invariance under 20 random unitaries", 0.0,
            criterion_basis_invariance);
  criterion(9, "CLI determinism and exit codes", 0.0,
            criterion_cli_determinism);
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criteria FAILED\n", g_failures);
  }
  return g_failures;
}
