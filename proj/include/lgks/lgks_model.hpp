#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgks/operator_core.hpp"

namespace lgks {

struct Channel {
  double rate = 0.0;  // gamma_i > 0, units of 1/time
  ComplexMatrix op;   // dimensionless Lindblad operator B_i
};

struct CompositeLayout {
  std::vector<int> factor_dims;  // one entry >= 2 per tensor factor

  int total_dim() const;
  int n_sites() const { return static_cast<int>(factor_dims.size()); }
};

// An LGKS model: Hermitian Hamiltonian (angular frequency units, hbar = 1),
// decay channels (rate, Lindblad operator), and an optional tensor-factor
// layout for composite systems. Immutable by convention once built.
struct LgksModel {
  int dim = 0;
  ComplexMatrix hamiltonian;
  std::vector<Channel> channels;
  std::optional<CompositeLayout> layout;
  std::string name;
  std::string description;
};

struct ValidationIssue {
  std::string message;
  double residual = 0.0;
};

/// Diagnostic check of every model invariant (Hermitian H, positive rates,
/// operator dimensions, finite entries, layout consistency). An empty result
/// means the model is valid.
std::vector<ValidationIssue> validate(const LgksModel& model);

/// Throws std::invalid_argument listing every violated invariant.
void require_valid(const LgksModel& model);

// ---- model zoo ----

/// Two-level system with a zero-temperature bath: one channel (gamma, sigma-).
LgksModel two_level_T0(double gamma, const ComplexMatrix& h_s);

/// Finite-temperature two-level system: channels (gamma(1+nbar), sigma-) and
/// (gamma nbar, sigma+); the absorption channel is dropped when nbar == 0.
LgksModel two_level_finite_T(double gamma, double nbar, const ComplexMatrix& h_s);

/// N-level atom coupled to the radiation field: emission channels
/// (down_rates[i-1], E_{i,i+1}) and absorption channels (up_rates[i-1],
/// E_{i+1,i}); zero up-rates drop the channel. Default Hamiltonian is
/// diag(1..d), overridable.
LgksModel n_level_atom(int d, const std::vector<double>& down_rates,
                       const std::vector<double>& up_rates,
                       const std::optional<ComplexMatrix>& h_s = std::nullopt);

/// Pure-dephasing two-level system: single channel (gamma, sigma_z). The
/// semigroup is reducible; serves as the negative control.
LgksModel dephasing_two_level(double gamma, const ComplexMatrix& h_s);

/// N identical copies of a local model, each coupled to its own bath: every
/// local channel is embedded at every site, H = sum of embedded local
/// Hamiltonians plus an optional nearest-neighbor exchange term built from
/// the local model's first channel operator b: J * (b_j^dag b_{j+1} + h.c.).
LgksModel atom_lattice(int n_sites, const LgksModel& local_model,
                       std::optional<double> coupling = std::nullopt,
                       int dim_cap = 4096);

/// Spin lowering operator S^- in the S_z eigenbasis ordered m = +S..-S, so
/// the matrix is strictly subdiagonal with entries sqrt((S+m)(S-m+1)).
ComplexMatrix spin_lowering(double spin);

/// Truncated Fock-space annihilation operator, basis n = 0..n_max ascending;
/// superdiagonal entries sqrt(1)..sqrt(n_max).
ComplexMatrix truncated_annihilation(int n_max);

/// Kronecker embedding of a local operator at 1-based site j with identities
/// on every other factor.
ComplexMatrix embed_local(const ComplexMatrix& op, int site,
                          const CompositeLayout& layout);

}  // namespace lgks
