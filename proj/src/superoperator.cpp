#include "lgks/superoperator.hpp"

#include <algorithm>
#include <cmath>

#include "lgks/random.hpp"

namespace lgks {

namespace {

const Complex kImag(0.0, 1.0);

void require_within_cap(const LgksModel& model, int dim_cap) {
  if (model.dim > dim_cap) {
    throw std::invalid_argument("superoperator: dimension " +
                                std::to_string(model.dim) + " exceeds cap " +
                                std::to_string(dim_cap));
  }
}

// Sorted-descending-by-real-part copy of a spectrum.
ComplexVector sort_by_real_desc(ComplexVector v) {
  std::sort(v.begin(), v.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return v;
}

double spectral_gap(const ComplexVector& eigs, double tol) {
  double radius = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    radius = std::max(radius, std::abs(eigs(i)));
  }
  const double threshold = tol * radius;
  double max_re = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    if (std::abs(eigs(i)) > threshold) {
      max_re = std::max(max_re, eigs(i).real());
    }
  }
  return std::isfinite(max_re) ? -max_re : 0.0;
}

}  // namespace

ComplexMatrix apply_generator(const LgksModel& model, const ComplexMatrix& rho) {
  require_valid(model);
  if (rho.rows() != model.dim || rho.cols() != model.dim) {
    throw DimensionError("apply_generator: state dimension mismatch");
  }
  ComplexMatrix out = -kImag * commutator(model.hamiltonian, rho);
  for (const Channel& ch : model.channels) {
    const ComplexMatrix bdb = ch.op.adjoint() * ch.op;
    out += ch.rate * (ch.op * rho * ch.op.adjoint() -
                      0.5 * anticommutator(bdb, rho));
  }
  return out;
}

ComplexMatrix apply_adjoint_generator(const LgksModel& model,
                                      const ComplexMatrix& op) {
  require_valid(model);
  if (op.rows() != model.dim || op.cols() != model.dim) {
    throw DimensionError("apply_adjoint_generator: operator dimension mismatch");
  }
  ComplexMatrix out = kImag * commutator(model.hamiltonian, op);
  for (const Channel& ch : model.channels) {
    const ComplexMatrix bdb = ch.op.adjoint() * ch.op;
    out += ch.rate * (ch.op.adjoint() * op * ch.op -
                      0.5 * anticommutator(bdb, op));
  }
  return out;
}

LiouvillianMatrix build_liouvillian(const LgksModel& model, int dim_cap) {
  require_valid(model);
  require_within_cap(model, dim_cap);
  const int d = model.dim;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  // Column stacking: vec(A X B) = (B^T kron A) vec(X).
  ComplexMatrix l = -kImag * (kron(id, model.hamiltonian) -
                              kron(model.hamiltonian.transpose(), id));
  for (const Channel& ch : model.channels) {
    const ComplexMatrix bdb = ch.op.adjoint() * ch.op;
    l += ch.rate * (kron(ch.op.conjugate(), ch.op) -
                    0.5 * kron(id, bdb) - 0.5 * kron(bdb.transpose(), id));
  }
  return {d, std::move(l), LiouvilleKind::schroedinger};
}

LiouvillianMatrix build_adjoint_liouvillian(const LgksModel& model, int dim_cap) {
  require_valid(model);
  require_within_cap(model, dim_cap);
  const int d = model.dim;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix l = kImag * (kron(id, model.hamiltonian) -
                             kron(model.hamiltonian.transpose(), id));
  for (const Channel& ch : model.channels) {
    const ComplexMatrix bdb = ch.op.adjoint() * ch.op;
    l += ch.rate * (kron(ch.op.transpose(), ch.op.adjoint()) -
                    0.5 * kron(id, bdb) - 0.5 * kron(bdb.transpose(), id));
  }
  return {d, std::move(l), LiouvilleKind::heisenberg};
}

SteadyStateResult steady_states(const LgksModel& model, double tol,
                                int dim_cap) {
  const LiouvillianMatrix liouv = build_liouvillian(model, dim_cap);
  const int d = liouv.dim;

  SteadyStateResult result;
  const NullSpaceResult kernel = null_space(liouv.matrix, tol);
  result.multiplicity = kernel.nullity;
  for (int k = 0; k < kernel.nullity; ++k) {
    result.kernel_basis.push_back(unvec(kernel.basis.col(k), d));
  }
  result.gap = spectral_gap(eigenvalues(liouv.matrix), tol);

  if (result.multiplicity == 0) {
    result.extraction_ok = false;
    result.extraction_note = "no kernel found at tolerance";
    return result;
  }

  // The kernel is closed under daggering, so its Hermitian part has real
  // dimension equal to the multiplicity. Build a real-orthonormal Hermitian
  // spanning set first.
  std::vector<ComplexMatrix> herm;
  auto add_herm = [&](const ComplexMatrix& h) {
    ComplexMatrix r = h;
    for (const ComplexMatrix& g : herm) {
      r -= g * (g.cwiseProduct(r.conjugate()).sum().real());
    }
    if (r.norm() > 1e-7) herm.push_back(r / r.norm());
  };
  for (const ComplexMatrix& k : result.kernel_basis) {
    add_herm(0.5 * (k + k.adjoint()));
    add_herm((k - k.adjoint()) / (2.0 * kImag));
  }

  // Candidate states: positive and negative spectral parts of each Hermitian
  // kernel element plus a couple of generic mixtures; both parts of a
  // stationary Hermitian operator are stationary.
  const double sigma_max =
      kernel.singular_values.size() > 0 ? kernel.singular_values(0) : 0.0;
  const double residual_cap = 100.0 * tol * std::max(sigma_max, 1.0);
  std::vector<ComplexMatrix> mixtures = herm;
  if (herm.size() > 1) {
    Rng rng(12u);
    for (int trial = 0; trial < 2; ++trial) {
      ComplexMatrix mix = ComplexMatrix::Zero(d, d);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (const ComplexMatrix& h : herm) mix += gauss(rng) * h;
      mixtures.push_back(mix);
    }
  }

  std::vector<ComplexVector> picked_vecs;
  auto try_candidate = [&](const ComplexMatrix& part) {
    const double tr = part.trace().real();
    if (tr < 1e-10) return;
    ComplexMatrix rho = part / tr;
    if ((liouv.matrix * vec(rho)).norm() > residual_cap * rho.norm()) return;
    // Keep only candidates that enlarge the span.
    ComplexVector v = vec(rho);
    v /= v.norm();
    for (const ComplexVector& u : picked_vecs) v -= u * u.dot(v);
    if (v.norm() < 1e-6) return;
    picked_vecs.push_back(v / v.norm());
    result.states.push_back(std::move(rho));
  };
  for (const ComplexMatrix& h : mixtures) {
    if (static_cast<int>(result.states.size()) >= result.multiplicity) break;
    const HermitianEigenResult eig = hermitian_eigen(h, 1e-6);
    ComplexMatrix pos = ComplexMatrix::Zero(d, d);
    ComplexMatrix neg = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      const ComplexMatrix proj =
          eig.vectors.col(i) * eig.vectors.col(i).adjoint();
      if (eig.values(i) > 0) pos += eig.values(i) * proj;
      if (eig.values(i) < 0) neg -= eig.values(i) * proj;
    }
    try_candidate(pos);
    if (static_cast<int>(result.states.size()) >= result.multiplicity) break;
    try_candidate(neg);
  }

  result.extraction_ok =
      static_cast<int>(result.states.size()) == result.multiplicity;
  if (!result.extraction_ok) {
    result.extraction_note =
        "extracted " + std::to_string(result.states.size()) +
        " states for kernel dimension " + std::to_string(result.multiplicity) +
        "; raw kernel returned";
  }
  return result;
}

SpectrumReport spectrum_report(const LgksModel& model, double tol,
                               int dim_cap) {
  const LiouvillianMatrix liouv = build_liouvillian(model, dim_cap);
  SpectrumReport report;
  report.eigenvalues = sort_by_real_desc(eigenvalues(liouv.matrix));
  double radius = 0.0;
  for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i) {
    radius = std::max(radius, std::abs(report.eigenvalues(i)));
  }
  const double threshold = tol * radius;
  report.max_real_part = report.eigenvalues.size() > 0
                             ? report.eigenvalues(0).real()
                             : 0.0;
  for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i) {
    const Complex l = report.eigenvalues(i);
    if (std::abs(l.real()) <= threshold) {
      ++report.kernel_candidates;
      if (std::abs(l.imag()) > threshold) ++report.pure_imaginary;
    }
  }
  report.gap = spectral_gap(report.eigenvalues, tol);
  return report;
}

ComplexMatrix evolve(const LgksModel& model, const ComplexMatrix& rho0, double t,
                     int dim_cap) {
  if (t < 0.0) {
    throw std::invalid_argument("evolve: negative time rejected, the dynamical "
                                "semigroup has no inverse elements");
  }
  if (rho0.rows() != model.dim || rho0.cols() != model.dim) {
    throw DimensionError("evolve: initial state dimension mismatch");
  }
  const double herm_residual = (rho0 - rho0.adjoint()).norm();
  if (herm_residual > 1e-9 * std::max(1.0, rho0.norm())) {
    throw std::invalid_argument("evolve: initial state is not Hermitian");
  }
  if (std::abs(rho0.trace() - Complex(1.0, 0.0)) > 1e-9) {
    throw std::invalid_argument("evolve: initial state must have unit trace");
  }
  const HermitianEigenResult eig = hermitian_eigen(rho0, 1e-6);
  if (eig.values.minCoeff() < -1e-8) {
    throw std::invalid_argument("evolve: initial state is not positive "
                                "semidefinite within tolerance");
  }
  const LiouvillianMatrix liouv = build_liouvillian(model, dim_cap);
  return unvec(expm(t * liouv.matrix) * vec(rho0), model.dim);
}

RelaxationProbe relaxation_probe(const LgksModel& model, int n_samples,
                                 const std::vector<double>& t_grid,
                                 std::uint64_t seed, double tol, int dim_cap) {
  RelaxationProbe probe;
  const SteadyStateResult steady = steady_states(model, tol, dim_cap);
  probe.gap = steady.gap;
  if (steady.multiplicity != 1) {
    probe.applicable = false;
    probe.note = "steady state is not unique (multiplicity " +
                 std::to_string(steady.multiplicity) + ")";
    return probe;
  }
  if (!steady.extraction_ok || steady.states.empty()) {
    probe.applicable = false;
    probe.note = "steady-state extraction failed";
    return probe;
  }
  probe.applicable = true;
  probe.times = t_grid;
  std::sort(probe.times.begin(), probe.times.end());

  const LiouvillianMatrix liouv = build_liouvillian(model, dim_cap);
  std::vector<ComplexMatrix> propagators;
  propagators.reserve(probe.times.size());
  for (double t : probe.times) propagators.push_back(expm(t * liouv.matrix));

  const ComplexMatrix& target = steady.states.front();
  Rng rng(seed);
  probe.monotone = true;
  probe.gap_consistent = true;
  for (int s = 0; s < n_samples; ++s) {
    const ComplexMatrix rho0 = random_density_matrix(model.dim, rng);
    std::vector<double> row;
    row.reserve(probe.times.size());
    for (const ComplexMatrix& p : propagators) {
      const ComplexMatrix rho_t = unvec(p * vec(rho0), model.dim);
      row.push_back(trace_norm(rho_t - target));
    }
    for (size_t i = 1; i < row.size(); ++i) {
      if (row[i] > row[i - 1] + 1e-10) probe.monotone = false;
    }
    if (row.size() >= 2) {
      const double span = probe.times.back() - probe.times.front();
      const double bound =
          std::max(row.front() * std::exp(-0.5 * probe.gap * span), 10.0 * tol);
      if (row.back() > bound) probe.gap_consistent = false;
    }
    probe.distances.push_back(std::move(row));
  }
  return probe;
}

}  // namespace lgks
