#pragma once

#include <string>

#include "lgks/criteria.hpp"

namespace lgks {

// Dimension cap enforced when parsing model files; keeps the dense d^2 x d^2
// oracle within desk-scale memory. Overridable per call.
inline constexpr int kParseDimCap = 64;

/// Parse failure with the offending location (JSON pointer-style path or the
/// byte position for syntax errors).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Model files are JSON: complex scalars as [re, im] pairs, matrices as
// row-major nested arrays:
//   { "name": ..., "description": ...,        (optional)
//     "dim": d,
//     "hamiltonian": [[[re,im], ...], ...],
//     "channels": [ {"rate": g, "matrix": [[[re,im], ...], ...]}, ... ],
//     "layout": [d1, ..., dN] }               (optional)
LgksModel parse_model(const std::string& text, int dim_cap = kParseDimCap);
LgksModel load_model(const std::string& path, int dim_cap = kParseDimCap);
std::string emit_model(const LgksModel& model);

/// Machine-readable audit report; floating values round-trip exactly and the
/// output is byte-deterministic for fixed inputs and seed.
std::string report_to_json(const AuditReport& report);
std::string report_to_text(const AuditReport& report);

/// Shortest-round-trip decimal form of a double (>= 15 significant digits
/// whenever they matter); shared by the text and machine formats.
std::string format_double(double value);

}  // namespace lgks
