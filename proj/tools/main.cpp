#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lgks/algebra_verify.hpp"
#include "lgks/model_io.hpp"
#include "lgks/random.hpp"
#include "lgks/version.hpp"

namespace {

using namespace lgks;
using ordered_json = nlohmann::ordered_json;

// Exit codes: 0 unique steady state, 1 multiple steady states,
// 2 input/parse error, 3 internal numerical failure.
constexpr int kExitUnique = 0;
constexpr int kExitMultiple = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  int search_draws = 32;
  std::string format = "text";
  std::string out;
  int max_dim = kParseDimCap;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_audit_knobs) {
  cmd->add_option("--tol", opts.tol, "relative tolerance")
      ->check(CLI::Range(1e-15, 0.999));
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "machine"}));
  cmd->add_option("--out", opts.out, "write the report to a file");
  cmd->add_option("--max-dim", opts.max_dim, "Hilbert dimension cap");
  if (with_audit_knobs) {
    cmd->add_option("--seed", opts.seed, "seed for randomized searches");
    cmd->add_option("--search-draws", opts.search_draws,
                    "random combination draws for the ladder search");
  }
}

// Single atomic write: everything lands in the target file through a rename.
void write_output(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  const std::string tmp = out_path + ".tmp";
  {
    std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
    if (!stream) throw std::runtime_error("cannot open output file " + tmp);
    stream << payload;
  }
  std::filesystem::rename(tmp, out_path);
}

ordered_json matrix_json(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int run_audit(const std::string& path, const CommonOptions& opts) {
  const LgksModel model = load_model(path, opts.max_dim);
  const AuditReport report =
      audit(model, AuditOptions{opts.tol, opts.seed, opts.search_draws,
                                std::max(opts.max_dim, kLiouvillianDimCap)});
  write_output(opts.format == "machine" ? report_to_json(report)
                                        : report_to_text(report),
               opts.out);
  if (!report.oracle_ok) return kExitNumerical;
  return report.oracle.multiplicity == 1 ? kExitUnique : kExitMultiple;
}

int run_steady(const std::string& path, const CommonOptions& opts) {
  const LgksModel model = load_model(path, opts.max_dim);
  const SteadyStateResult result =
      steady_states(model, opts.tol, std::max(opts.max_dim, kLiouvillianDimCap));
  std::string payload;
  if (opts.format == "machine") {
    ordered_json doc;
    doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    doc["tolerance"] = opts.tol;
    doc["multiplicity"] = result.multiplicity;
    doc["gap"] = result.gap;
    doc["extraction_ok"] = result.extraction_ok;
    if (!result.extraction_note.empty()) {
      doc["extraction_note"] = result.extraction_note;
    }
    ordered_json states = ordered_json::array();
    for (const ComplexMatrix& s : result.states) states.push_back(matrix_json(s));
    doc["steady_states"] = std::move(states);
    payload = doc.dump(2) + "\n";
  } else {
    std::ostringstream text;
    text << "multiplicity " << result.multiplicity << "  gap "
         << format_double(result.gap) << "  extraction "
         << (result.extraction_ok ? "ok" : "failed") << "\n";
    for (size_t s = 0; s < result.states.size(); ++s) {
      text << "steady state " << (s + 1) << ":\n";
      for (Eigen::Index i = 0; i < result.states[s].rows(); ++i) {
        text << "  ";
        for (Eigen::Index j = 0; j < result.states[s].cols(); ++j) {
          text << "(" << format_double(result.states[s](i, j).real()) << ","
               << format_double(result.states[s](i, j).imag()) << ") ";
        }
        text << "\n";
      }
    }
    payload = text.str();
  }
  write_output(payload, opts.out);
  if (result.multiplicity == 0) return kExitNumerical;
  return result.multiplicity == 1 ? kExitUnique : kExitMultiple;
}

int run_spectrum(const std::string& path, const CommonOptions& opts) {
  const LgksModel model = load_model(path, opts.max_dim);
  const SpectrumReport report =
      spectrum_report(model, opts.tol, std::max(opts.max_dim, kLiouvillianDimCap));
  std::string payload;
  if (opts.format == "machine") {
    ordered_json doc;
    doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    doc["tolerance"] = opts.tol;
    ordered_json eigs = ordered_json::array();
    for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i) {
      eigs.push_back({report.eigenvalues(i).real(), report.eigenvalues(i).imag()});
    }
    doc["eigenvalues"] = std::move(eigs);
    doc["max_real_part"] = report.max_real_part;
    doc["gap"] = report.gap;
    doc["kernel_candidates"] = report.kernel_candidates;
    doc["pure_imaginary"] = report.pure_imaginary;
    payload = doc.dump(2) + "\n";
  } else {
    std::ostringstream text;
    text << "gap " << format_double(report.gap) << "  kernel candidates "
         << report.kernel_candidates << "  pure imaginary "
         << report.pure_imaginary << "  max Re "
         << format_double(report.max_real_part) << "\n";
    text << "eigenvalues (Re desc):\n";
    for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i) {
      text << "  " << format_double(report.eigenvalues(i).real()) << "  "
           << format_double(report.eigenvalues(i).imag()) << "i\n";
    }
    payload = text.str();
  }
  write_output(payload, opts.out);
  return kExitUnique;
}

struct EvolveOptions {
  std::vector<double> times;
  std::string rho0 = "maximally-mixed";
  int samples = 1;
};

ComplexMatrix initial_state(const LgksModel& model, const std::string& kind,
                            Rng& rng) {
  if (kind == "maximally-mixed") {
    return ComplexMatrix::Identity(model.dim, model.dim) /
           static_cast<double>(model.dim);
  }
  if (kind == "ground" || kind == "excited") {
    const HermitianEigenResult eig = hermitian_eigen(model.hamiltonian, 1e-6);
    const int column = kind == "ground" ? 0 : model.dim - 1;
    const ComplexVector v = eig.vectors.col(column);
    return v * v.adjoint();
  }
  if (kind.rfind("random", 0) == 0) {
    return random_density_matrix(model.dim, rng);
  }
  throw std::invalid_argument("unknown rho0 choice '" + kind + "'");
}

int run_evolve(const std::string& path, const CommonOptions& opts,
               const EvolveOptions& evolve_opts) {
  const LgksModel model = load_model(path, opts.max_dim);
  if (evolve_opts.times.empty()) {
    throw std::invalid_argument("evolve: provide at least one time via --t");
  }
  for (double t : evolve_opts.times) {
    if (t < 0) {
      throw std::invalid_argument(
          "evolve: negative time rejected, the semigroup has no inverses");
    }
  }
  std::uint64_t rho_seed = opts.seed;
  if (evolve_opts.rho0.rfind("random:", 0) == 0) {
    rho_seed = std::stoull(evolve_opts.rho0.substr(7));
  }
  const bool randomized = evolve_opts.rho0.rfind("random", 0) == 0;
  const int samples = randomized ? std::max(1, evolve_opts.samples) : 1;

  const SteadyStateResult steady = steady_states(model, opts.tol);
  const bool unique = steady.multiplicity == 1 && steady.extraction_ok;
  const LiouvillianMatrix liouv = build_liouvillian(model, opts.max_dim);
  std::vector<ComplexMatrix> propagators;
  for (double t : evolve_opts.times) propagators.push_back(expm(t * liouv.matrix));

  Rng rng(rho_seed);
  ordered_json rows = ordered_json::array();
  std::ostringstream text;
  text << "sample  t  ";
  if (unique) text << "distance  ";
  text << "trace_residual  min_eigenvalue  populations\n";
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix rho0 = initial_state(model, evolve_opts.rho0, rng);
    for (size_t k = 0; k < propagators.size(); ++k) {
      const ComplexMatrix rho_t = unvec(propagators[k] * vec(rho0), model.dim);
      const double trace_residual = std::abs(rho_t.trace() - Complex(1, 0));
      const ComplexMatrix herm = 0.5 * (rho_t + rho_t.adjoint());
      const HermitianEigenResult eig = hermitian_eigen(herm, 1e-6);
      ordered_json row;
      row["sample"] = s;
      row["t"] = evolve_opts.times[k];
      text << s << "  " << format_double(evolve_opts.times[k]) << "  ";
      if (unique) {
        const double distance = trace_norm(rho_t - steady.states.front());
        row["distance"] = distance;
        text << format_double(distance) << "  ";
      }
      row["trace_residual"] = trace_residual;
      row["min_eigenvalue"] = eig.values.minCoeff();
      ordered_json pops = ordered_json::array();
      text << format_double(trace_residual) << "  "
           << format_double(eig.values.minCoeff()) << "  ";
      for (int i = 0; i < model.dim; ++i) {
        pops.push_back(rho_t(i, i).real());
        text << format_double(rho_t(i, i).real()) << " ";
      }
      row["populations"] = std::move(pops);
      text << "\n";
      rows.push_back(std::move(row));
    }
  }
  std::string payload;
  if (opts.format == "machine") {
    ordered_json doc;
    doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    doc["tolerance"] = opts.tol;
    doc["rho0"] = evolve_opts.rho0;
    doc["samples"] = samples;
    doc["steady_state_unique"] = unique;
    doc["rows"] = std::move(rows);
    payload = doc.dump(2) + "\n";
  } else {
    payload = text.str();
  }
  write_output(payload, opts.out);
  return kExitUnique;
}

struct ZooOptions {
  std::string name;
  double gamma = 1.0;
  double omega = 1.0;
  double nbar = 0.0;
  double spin = 0.5;
  int n_max = 3;
  int dim = 3;
  std::vector<double> down;
  std::vector<double> up;
  int sites = 2;
  std::string local = "two-level-T0";
  double coupling = 0.0;
  bool with_coupling = false;
};

LgksModel make_two_level_h(const ZooOptions& z, const std::string& which) {
  const ComplexMatrix h = 0.5 * z.omega * sigma_z();
  if (which == "two-level-T0") return two_level_T0(z.gamma, h);
  if (which == "two-level-finite-T") return two_level_finite_T(z.gamma, z.nbar, h);
  if (which == "dephasing") return dephasing_two_level(z.gamma, h);
  throw std::invalid_argument("unknown zoo model '" + which + "'");
}

LgksModel build_zoo_model(const ZooOptions& z) {
  if (z.name == "two-level-T0" || z.name == "two-level-finite-T" ||
      z.name == "dephasing") {
    return make_two_level_h(z, z.name);
  }
  if (z.name == "n-level") {
    std::vector<double> up = z.up;
    if (up.empty()) up.assign(z.dim - 1, 0.0);
    std::vector<double> down = z.down;
    if (down.empty()) down.assign(z.dim - 1, 1.0);
    return n_level_atom(z.dim, down, up);
  }
  if (z.name == "spin") {
    const ComplexMatrix lower = spin_lowering(z.spin);
    const int d = static_cast<int>(lower.rows());
    ComplexMatrix h = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) h(k, k) = z.omega * (z.spin - k);
    LgksModel model;
    model.dim = d;
    model.hamiltonian = h;
    model.channels.push_back({z.gamma, lower});
    model.name = "spin";
    require_valid(model);
    return model;
  }
  if (z.name == "oscillator") {
    const ComplexMatrix a = truncated_annihilation(z.n_max);
    const int d = z.n_max + 1;
    ComplexMatrix h = ComplexMatrix::Zero(d, d);
    for (int n = 0; n < d; ++n) h(n, n) = z.omega * n;
    LgksModel model;
    model.dim = d;
    model.hamiltonian = h;
    model.channels.push_back({z.gamma, a});
    model.name = "oscillator";
    require_valid(model);
    return model;
  }
  if (z.name == "lattice") {
    LgksModel local;
    if (z.local == "n-level") {
      ZooOptions inner = z;
      inner.name = "n-level";
      local = build_zoo_model(inner);
    } else {
      local = make_two_level_h(z, z.local);
    }
    return atom_lattice(z.sites, local,
                        z.with_coupling ? std::optional<double>(z.coupling)
                                        : std::nullopt);
  }
  throw std::invalid_argument("unknown zoo model '" + z.name + "'");
}

int run_zoo(const ZooOptions& z, const CommonOptions& opts) {
  const LgksModel model = build_zoo_model(z);
  write_output(emit_model(model), opts.out);
  return kExitUnique;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steady-state uniqueness auditor for LGKS master equations"};
  app.require_subcommand(1);

  CommonOptions audit_opts, steady_opts, spectrum_opts, evolve_common, zoo_opts;
  std::string audit_path, steady_path, spectrum_path, evolve_path;
  EvolveOptions evolve_extra;
  ZooOptions zoo;

  CLI::App* cmd_audit = app.add_subcommand(
      "audit", "run every uniqueness criterion plus the spectral oracle");
  cmd_audit->add_option("model", audit_path, "model file")->required();
  add_common(cmd_audit, audit_opts, true);

  CLI::App* cmd_steady =
      app.add_subcommand("steady", "steady-state multiplicity and states");
  cmd_steady->add_option("model", steady_path, "model file")->required();
  add_common(cmd_steady, steady_opts, false);

  CLI::App* cmd_spectrum =
      app.add_subcommand("spectrum", "Liouvillian eigenvalues and gap");
  cmd_spectrum->add_option("model", spectrum_path, "model file")->required();
  add_common(cmd_spectrum, spectrum_opts, false);

  CLI::App* cmd_evolve =
      app.add_subcommand("evolve", "propagate states on a time grid");
  cmd_evolve->add_option("model", evolve_path, "model file")->required();
  cmd_evolve->add_option("--t", evolve_extra.times, "times (comma separated)")
      ->required()
      ->delimiter(',');
  cmd_evolve->add_option("--rho0", evolve_extra.rho0,
                         "ground|excited|maximally-mixed|random:SEED");
  cmd_evolve->add_option("--samples", evolve_extra.samples,
                         "number of random initial states");
  add_common(cmd_evolve, evolve_common, false);

  CLI::App* cmd_zoo = app.add_subcommand("zoo", "emit a predefined model file");
  cmd_zoo->add_option("name", zoo.name,
                      "two-level-T0|two-level-finite-T|dephasing|n-level|spin|"
                      "oscillator|lattice")
      ->required();
  cmd_zoo->add_option("--gamma", zoo.gamma, "decay rate");
  cmd_zoo->add_option("--omega", zoo.omega, "level splitting");
  cmd_zoo->add_option("--nbar", zoo.nbar, "bath mean occupation");
  cmd_zoo->add_option("--spin", zoo.spin, "spin value (half integers)");
  cmd_zoo->add_option("--nmax", zoo.n_max, "Fock space truncation");
  cmd_zoo->add_option("--d", zoo.dim, "number of levels");
  cmd_zoo->add_option("--down", zoo.down, "emission rates")->delimiter(',');
  cmd_zoo->add_option("--up", zoo.up, "absorption rates")->delimiter(',');
  cmd_zoo->add_option("--sites", zoo.sites, "lattice sites");
  cmd_zoo->add_option("--local", zoo.local, "local model for lattices");
  CLI::Option* coupling_opt =
      cmd_zoo->add_option("--coupling", zoo.coupling, "exchange strength");
  add_common(cmd_zoo, zoo_opts, false);

  CLI11_PARSE(app, argc, argv);
  zoo.with_coupling = coupling_opt->count() > 0;

  try {
    if (cmd_audit->parsed()) return run_audit(audit_path, audit_opts);
    if (cmd_steady->parsed()) return run_steady(steady_path, steady_opts);
    if (cmd_spectrum->parsed()) return run_spectrum(spectrum_path, spectrum_opts);
    if (cmd_evolve->parsed())
      return run_evolve(evolve_path, evolve_common, evolve_extra);
    if (cmd_zoo->parsed()) return run_zoo(zoo, zoo_opts);
  } catch (const ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& err) {
    std::cerr << "failure: " << err.what() << "\n";
    return kExitNumerical;
  }
  return kExitInput;
}
