#include "lgks/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lgks/version.hpp"

namespace lgks {

using ordered_json = nlohmann::ordered_json;

namespace {

ComplexMatrix parse_matrix(const ordered_json& node, int d,
                           const std::string& path) {
  if (!node.is_array() || static_cast<int>(node.size()) != d) {
    throw ParseError(path, "expected " + std::to_string(d) + " rows");
  }
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    const ordered_json& row = node[i];
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw ParseError(path + "[" + std::to_string(i) + "]",
                       "expected " + std::to_string(d) + " entries");
    }
    for (int j = 0; j < d; ++j) {
      const ordered_json& entry = row[j];
      const std::string where =
          path + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number() || !entry[1].is_number()) {
        throw ParseError(where, "expected a [re, im] pair");
      }
      m(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

ordered_json matrix_to_json(const ComplexMatrix& m) {
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

ordered_json verdict_to_json(const CriterionVerdict& verdict) {
  ordered_json out;
  out["criterion"] = verdict.criterion;
  out["applicable"] = verdict.applicable;
  out["passed"] = verdict.passed;
  ordered_json evidence;
  for (const auto& [key, value] : verdict.evidence) evidence[key] = value;
  out["evidence"] = std::move(evidence);
  out["notes"] = verdict.notes;
  return out;
}

}  // namespace

LgksModel parse_model(const std::string& text, int dim_cap) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError("input", err.what());
  }
  if (!doc.is_object()) throw ParseError("input", "expected a JSON object");

  LgksModel model;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("name", "expected a string");
    model.name = doc["name"].get<std::string>();
  }
  if (doc.contains("description")) {
    if (!doc["description"].is_string()) {
      throw ParseError("description", "expected a string");
    }
    model.description = doc["description"].get<std::string>();
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw ParseError("dim", "required integer field");
  }
  model.dim = doc["dim"].get<int>();
  if (model.dim < 1) throw ParseError("dim", "must be positive");
  if (model.dim > dim_cap) {
    throw ParseError("dim", "dimension " + std::to_string(model.dim) +
                                " exceeds the cap " + std::to_string(dim_cap) +
                                " (override with --max-dim)");
  }
  if (!doc.contains("hamiltonian")) {
    throw ParseError("hamiltonian", "required field");
  }
  model.hamiltonian = parse_matrix(doc["hamiltonian"], model.dim, "hamiltonian");

  if (!doc.contains("channels") || !doc["channels"].is_array()) {
    throw ParseError("channels", "required array field");
  }
  int index = 0;
  for (const ordered_json& entry : doc["channels"]) {
    const std::string path = "channels[" + std::to_string(index) + "]";
    if (!entry.is_object()) throw ParseError(path, "expected an object");
    if (!entry.contains("rate") || !entry["rate"].is_number()) {
      throw ParseError(path + ".rate", "required numeric field");
    }
    if (!entry.contains("matrix")) {
      throw ParseError(path + ".matrix", "required field");
    }
    Channel ch;
    ch.rate = entry["rate"].get<double>();
    ch.op = parse_matrix(entry["matrix"], model.dim, path + ".matrix");
    model.channels.push_back(std::move(ch));
    ++index;
  }
  if (doc.contains("layout")) {
    if (!doc["layout"].is_array()) throw ParseError("layout", "expected an array");
    CompositeLayout layout;
    for (const ordered_json& d : doc["layout"]) {
      if (!d.is_number_integer()) {
        throw ParseError("layout", "expected integer factor dimensions");
      }
      layout.factor_dims.push_back(d.get<int>());
    }
    model.layout = std::move(layout);
  }

  const auto issues = validate(model);
  if (!issues.empty()) {
    std::ostringstream msg;
    msg << "model fails validation:";
    for (const auto& issue : issues) {
      msg << " [" << issue.message << " (residual " << issue.residual << ")]";
    }
    throw ParseError("model", msg.str());
  }
  return model;
}

LgksModel load_model(const std::string& path, int dim_cap) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str(), dim_cap);
}

std::string emit_model(const LgksModel& model) {
  ordered_json doc;
  if (!model.name.empty()) doc["name"] = model.name;
  if (!model.description.empty()) doc["description"] = model.description;
  doc["dim"] = model.dim;
  doc["hamiltonian"] = matrix_to_json(model.hamiltonian);
  ordered_json channels = ordered_json::array();
  for (const Channel& ch : model.channels) {
    ordered_json entry;
    entry["rate"] = ch.rate;
    entry["matrix"] = matrix_to_json(ch.op);
    channels.push_back(std::move(entry));
  }
  doc["channels"] = std::move(channels);
  if (model.layout) doc["layout"] = model.layout->factor_dims;
  return doc.dump(2) + "\n";
}

std::string format_double(double value) {
  // nlohmann serializes doubles with the shortest representation that
  // round-trips, which is what both output formats share.
  return ordered_json(value).dump();
}

std::string report_to_json(const AuditReport& report) {
  ordered_json doc;
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  doc["tolerance"] = report.options.tol;
  doc["seed"] = report.options.seed;
  doc["search_draws"] = report.options.search_draws;

  ordered_json model;
  model["name"] = report.model_name;
  model["dim"] = report.dim;
  model["channels"] = report.n_channels;
  if (report.layout) model["layout"] = report.layout->factor_dims;
  doc["model"] = std::move(model);

  ordered_json verdicts = ordered_json::array();
  for (const CriterionVerdict& verdict : report.verdicts) {
    verdicts.push_back(verdict_to_json(verdict));
  }
  doc["verdicts"] = std::move(verdicts);

  ordered_json oracle;
  oracle["ok"] = report.oracle_ok;
  if (!report.oracle_note.empty()) oracle["note"] = report.oracle_note;
  if (report.oracle_ok) {
    oracle["multiplicity"] = report.oracle.multiplicity;
    oracle["gap"] = report.oracle.gap;
    oracle["extraction_ok"] = report.oracle.extraction_ok;
    if (!report.oracle.extraction_note.empty()) {
      oracle["extraction_note"] = report.oracle.extraction_note;
    }
    ordered_json states = ordered_json::array();
    for (const ComplexMatrix& state : report.oracle.states) {
      states.push_back(matrix_to_json(state));
    }
    oracle["steady_states"] = std::move(states);
  }
  doc["oracle"] = std::move(oracle);

  if (report.oracle_ok) {
    ordered_json spectrum;
    ordered_json eigs = ordered_json::array();
    for (Eigen::Index i = 0; i < report.spectrum.eigenvalues.size(); ++i) {
      eigs.push_back({report.spectrum.eigenvalues(i).real(),
                      report.spectrum.eigenvalues(i).imag()});
    }
    spectrum["eigenvalues"] = std::move(eigs);
    spectrum["max_real_part"] = report.spectrum.max_real_part;
    spectrum["gap"] = report.spectrum.gap;
    spectrum["kernel_candidates"] = report.spectrum.kernel_candidates;
    spectrum["pure_imaginary"] = report.spectrum.pure_imaginary;
    doc["spectrum"] = std::move(spectrum);
  }
  doc["consistent"] = report.consistent;
  return doc.dump(2) + "\n";
}

std::string report_to_text(const AuditReport& report) {
  std::ostringstream out;
  out << kToolName << " " << kToolVersion << " steady-state uniqueness audit\n";
  out << "model: " << (report.model_name.empty() ? "(unnamed)" : report.model_name)
      << "  dim " << report.dim << "  channels " << report.n_channels;
  if (report.layout) {
    out << "  layout [";
    for (size_t i = 0; i < report.layout->factor_dims.size(); ++i) {
      out << (i ? "," : "") << report.layout->factor_dims[i];
    }
    out << "]";
  }
  out << "\n";
  out << "tolerance " << format_double(report.options.tol) << "  seed "
      << report.options.seed << "  search draws " << report.options.search_draws
      << "\n\n";
  out << "criterion     applicable  passed  notes\n";
  for (const CriterionVerdict& verdict : report.verdicts) {
    out << verdict.criterion;
    for (size_t i = verdict.criterion.size(); i < 14; ++i) out << ' ';
    out << (verdict.applicable ? "yes" : "no ") << "         "
        << (verdict.passed ? "yes" : "no ") << "     " << verdict.notes << "\n";
  }
  out << "\n";
  if (report.oracle_ok) {
    out << "oracle: multiplicity " << report.oracle.multiplicity << "  gap "
        << format_double(report.oracle.gap) << "  extraction "
        << (report.oracle.extraction_ok ? "ok" : "failed") << "\n";
    out << "spectrum: max Re " << format_double(report.spectrum.max_real_part)
        << "  kernel candidates " << report.spectrum.kernel_candidates
        << "  pure imaginary " << report.spectrum.pure_imaginary << "\n";
    for (size_t s = 0; s < report.oracle.states.size(); ++s) {
      out << "steady state " << (s + 1) << ":\n";
      const ComplexMatrix& state = report.oracle.states[s];
      for (Eigen::Index i = 0; i < state.rows(); ++i) {
        out << "  ";
        for (Eigen::Index j = 0; j < state.cols(); ++j) {
          out << "(" << format_double(state(i, j).real()) << ","
              << format_double(state(i, j).imag()) << ") ";
        }
        out << "\n";
      }
    }
  } else {
    out << "oracle failed: " << report.oracle_note << "\n";
  }
  out << "consistent: " << (report.consistent ? "yes" : "no") << "\n";
  return out.str();
}

}  // namespace lgks
