#include "lgks/lgks_model.hpp"

#include <cmath>
#include <sstream>

namespace lgks {

int CompositeLayout::total_dim() const {
  int total = 1;
  for (int d : factor_dims) total *= d;
  return total;
}

std::vector<ValidationIssue> validate(const LgksModel& model) {
  std::vector<ValidationIssue> issues;
  if (model.dim < 1) {
    issues.push_back({"dimension must be positive", static_cast<double>(model.dim)});
    return issues;
  }
  if (model.hamiltonian.rows() != model.dim || model.hamiltonian.cols() != model.dim) {
    issues.push_back({"hamiltonian is not dim x dim", 0.0});
  } else {
    if (!model.hamiltonian.allFinite()) {
      issues.push_back({"hamiltonian has non-finite entries", 0.0});
    } else {
      const double norm = model.hamiltonian.norm();
      const double residual = (model.hamiltonian - model.hamiltonian.adjoint()).norm();
      if (residual > 1e-10 * std::max(1.0, norm)) {
        issues.push_back({"hamiltonian is not Hermitian", residual});
      }
    }
  }
  for (size_t i = 0; i < model.channels.size(); ++i) {
    const Channel& ch = model.channels[i];
    const std::string where = "channel " + std::to_string(i + 1);
    if (!(ch.rate > 0.0)) {
      issues.push_back({"non-positive rate, " + where, ch.rate});
    }
    if (!std::isfinite(ch.rate)) {
      issues.push_back({"non-finite rate, " + where, ch.rate});
    }
    if (ch.op.rows() != model.dim || ch.op.cols() != model.dim) {
      issues.push_back({"operator is not dim x dim, " + where, 0.0});
    } else if (!ch.op.allFinite()) {
      issues.push_back({"operator has non-finite entries, " + where, 0.0});
    }
  }
  if (model.layout) {
    for (size_t i = 0; i < model.layout->factor_dims.size(); ++i) {
      if (model.layout->factor_dims[i] < 2) {
        issues.push_back({"layout factor " + std::to_string(i + 1) + " must be >= 2",
                          static_cast<double>(model.layout->factor_dims[i])});
      }
    }
    if (model.layout->factor_dims.empty()) {
      issues.push_back({"layout must name at least one factor", 0.0});
    } else if (model.layout->total_dim() != model.dim) {
      issues.push_back({"layout factor dimensions do not multiply to dim",
                        static_cast<double>(model.layout->total_dim())});
    }
  }
  return issues;
}

void require_valid(const LgksModel& model) {
  const auto issues = validate(model);
  if (issues.empty()) return;
  std::ostringstream msg;
  msg << "invalid model";
  if (!model.name.empty()) msg << " '" << model.name << "'";
  msg << ":";
  for (const auto& issue : issues) {
    msg << " [" << issue.message << " (residual " << issue.residual << ")]";
  }
  throw std::invalid_argument(msg.str());
}

LgksModel two_level_T0(double gamma, const ComplexMatrix& h_s) {
  LgksModel model;
  model.dim = 2;
  model.hamiltonian = h_s;
  model.channels.push_back({gamma, sigma_minus()});
  model.name = "two-level-T0";
  require_valid(model);
  return model;
}

LgksModel two_level_finite_T(double gamma, double nbar, const ComplexMatrix& h_s) {
  if (nbar < 0.0) {
    throw std::invalid_argument("two_level_finite_T: nbar must be >= 0");
  }
  LgksModel model;
  model.dim = 2;
  model.hamiltonian = h_s;
  model.channels.push_back({gamma * (1.0 + nbar), sigma_minus()});
  if (nbar > 0.0) {
    model.channels.push_back({gamma * nbar, sigma_plus()});
  }
  model.name = "two-level-finite-T";
  require_valid(model);
  return model;
}

LgksModel n_level_atom(int d, const std::vector<double>& down_rates,
                       const std::vector<double>& up_rates,
                       const std::optional<ComplexMatrix>& h_s) {
  if (d < 2) throw std::invalid_argument("n_level_atom: d must be >= 2");
  if (static_cast<int>(down_rates.size()) != d - 1 ||
      static_cast<int>(up_rates.size()) != d - 1) {
    throw std::invalid_argument("n_level_atom: rate lists must have length d-1");
  }
  for (double r : down_rates) {
    if (!(r > 0.0)) {
      throw std::invalid_argument("n_level_atom: down rates must be positive");
    }
  }
  for (double r : up_rates) {
    if (r < 0.0) {
      throw std::invalid_argument("n_level_atom: up rates must be >= 0");
    }
  }
  LgksModel model;
  model.dim = d;
  if (h_s) {
    model.hamiltonian = *h_s;
  } else {
    model.hamiltonian = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) model.hamiltonian(i, i) = i + 1.0;
  }
  for (int i = 1; i < d; ++i) {
    model.channels.push_back({down_rates[i - 1], matrix_unit(i, i + 1, d)});
  }
  for (int i = 1; i < d; ++i) {
    if (up_rates[i - 1] > 0.0) {
      model.channels.push_back({up_rates[i - 1], matrix_unit(i + 1, i, d)});
    }
  }
  model.name = "n-level";
  require_valid(model);
  return model;
}

LgksModel dephasing_two_level(double gamma, const ComplexMatrix& h_s) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("dephasing_two_level: gamma must be positive");
  }
  LgksModel model;
  model.dim = 2;
  model.hamiltonian = h_s;
  model.channels.push_back({gamma, sigma_z()});
  model.name = "dephasing";
  require_valid(model);
  return model;
}

LgksModel atom_lattice(int n_sites, const LgksModel& local_model,
                       std::optional<double> coupling, int dim_cap) {
  if (n_sites < 1) throw std::invalid_argument("atom_lattice: need n_sites >= 1");
  require_valid(local_model);
  if (local_model.dim < 2) {
    throw std::invalid_argument("atom_lattice: local dimension must be >= 2");
  }
  long total = 1;
  for (int j = 0; j < n_sites; ++j) {
    total *= local_model.dim;
    if (total > dim_cap) {
      throw std::invalid_argument(
          "atom_lattice: total dimension exceeds cap " + std::to_string(dim_cap));
    }
  }
  CompositeLayout layout;
  layout.factor_dims.assign(n_sites, local_model.dim);
  const int d = static_cast<int>(total);

  LgksModel model;
  model.dim = d;
  model.layout = layout;
  model.hamiltonian = ComplexMatrix::Zero(d, d);
  for (int j = 1; j <= n_sites; ++j) {
    model.hamiltonian += embed_local(local_model.hamiltonian, j, layout);
    for (const Channel& ch : local_model.channels) {
      model.channels.push_back({ch.rate, embed_local(ch.op, j, layout)});
    }
  }
  if (coupling) {
    if (local_model.channels.empty()) {
      throw std::invalid_argument(
          "atom_lattice: coupling requires at least one local channel");
    }
    const ComplexMatrix& b = local_model.channels.front().op;
    for (int j = 1; j < n_sites; ++j) {
      ComplexMatrix hop = embed_local(b.adjoint(), j, layout) *
                          embed_local(b, j + 1, layout);
      model.hamiltonian += *coupling * (hop + hop.adjoint());
    }
  }
  model.name = "lattice";
  require_valid(model);
  return model;
}

ComplexMatrix spin_lowering(double spin) {
  const double two_s = 2.0 * spin;
  const long rounded = std::lround(two_s);
  if (rounded < 1 || std::abs(two_s - rounded) > 1e-9) {
    throw std::invalid_argument("spin_lowering: 2S must be a positive integer");
  }
  const int d = static_cast<int>(rounded) + 1;
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  // Basis ordered m = +S..-S so that S^- sits on the first subdiagonal.
  for (int k = 1; k < d; ++k) {
    const double mval = spin - (k - 1);
    m(k, k - 1) = std::sqrt((spin + mval) * (spin - mval + 1.0));
  }
  return m;
}

ComplexMatrix truncated_annihilation(int n_max) {
  if (n_max < 1) {
    throw std::invalid_argument("truncated_annihilation: n_max must be >= 1");
  }
  const int d = n_max + 1;
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int n = 1; n <= n_max; ++n) {
    m(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return m;
}

ComplexMatrix embed_local(const ComplexMatrix& op, int site,
                          const CompositeLayout& layout) {
  const int n = layout.n_sites();
  if (site < 1 || site > n) {
    throw DimensionError("embed_local: site " + std::to_string(site) +
                         " out of range for " + std::to_string(n) + " factors");
  }
  if (op.rows() != layout.factor_dims[site - 1] ||
      op.cols() != layout.factor_dims[site - 1]) {
    throw DimensionError("embed_local: operator dimension does not match factor " +
                         std::to_string(site));
  }
  ComplexMatrix result = ComplexMatrix::Identity(1, 1);
  for (int j = 1; j <= n; ++j) {
    if (j == site) {
      result = kron(result, op);
    } else {
      const int dj = layout.factor_dims[j - 1];
      result = kron(result, ComplexMatrix::Identity(dj, dj));
    }
  }
  return result;
}

}  // namespace lgks
