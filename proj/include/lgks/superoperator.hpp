#pragma once

#include <cstdint>

#include "lgks/lgks_model.hpp"

namespace lgks {

// Hard default cap on the Hilbert dimension for dense d^2 x d^2 superoperator
// work (matrix side 4096 at the cap).
inline constexpr int kLiouvillianDimCap = 64;

enum class LiouvilleKind { schroedinger, heisenberg };

struct LiouvillianMatrix {
  int dim = 0;
  ComplexMatrix matrix;  // d^2 x d^2, acts on column-stacked vec(rho)
  LiouvilleKind kind = LiouvilleKind::schroedinger;
};

// Direct term-by-term evaluation of the generator and its dual on a matrix.
// The matrix builders below are contracted to reproduce these maps under
// vectorization; keeping both routes makes the contract testable.
ComplexMatrix apply_generator(const LgksModel& model, const ComplexMatrix& rho);
ComplexMatrix apply_adjoint_generator(const LgksModel& model, const ComplexMatrix& op);

/// Schroedinger-picture generator as a dense matrix on vec(rho):
/// L(rho) = -i[H, rho] + sum_i gamma_i (B_i rho B_i^dag - {B_i^dag B_i, rho}/2).
LiouvillianMatrix build_liouvillian(const LgksModel& model,
                                    int dim_cap = kLiouvillianDimCap);

/// Heisenberg-picture dual: L*(O) = +i[H, O] + sum_i gamma_i
/// (B_i^dag O B_i - {B_i^dag B_i, O}/2); unital, L*(I) = 0.
LiouvillianMatrix build_adjoint_liouvillian(const LgksModel& model,
                                            int dim_cap = kLiouvillianDimCap);

struct SteadyStateResult {
  int multiplicity = 0;
  // Hermitian, unit-trace, PSD-within-tolerance states spanning the physical
  // fixed-point set when extraction succeeds.
  std::vector<ComplexMatrix> states;
  std::vector<ComplexMatrix> kernel_basis;  // raw kernel, Frobenius-orthonormal
  double gap = 0.0;  // -max{Re l : l outside the kernel cluster}, 1/time
  bool extraction_ok = false;
  std::string extraction_note;
};

/// Kernel of the Liouvillian plus physical-state extraction. Multiplicity is
/// always reported, even when extraction of PSD states fails.
SteadyStateResult steady_states(const LgksModel& model, double tol = kDefaultTol,
                                int dim_cap = kLiouvillianDimCap);

struct SpectrumReport {
  ComplexVector eigenvalues;  // all d^2, sorted by real part descending
  double max_real_part = 0.0;
  double gap = 0.0;
  int kernel_candidates = 0;  // |Re l| <= tol * spectral radius
  int pure_imaginary = 0;     // |Re l| within tolerance but |Im l| not
};

SpectrumReport spectrum_report(const LgksModel& model, double tol = kDefaultTol,
                               int dim_cap = kLiouvillianDimCap);

/// Propagate a density matrix: unvec(expm(t L) vec(rho0)). Rejects t < 0
/// (semigroup only) and initial states that are not Hermitian, unit-trace and
/// PSD within tolerance.
ComplexMatrix evolve(const LgksModel& model, const ComplexMatrix& rho0, double t,
                     int dim_cap = kLiouvillianDimCap);

struct RelaxationProbe {
  bool applicable = false;  // requires a unique steady state
  std::string note;
  std::vector<double> times;
  std::vector<std::vector<double>> distances;  // [sample][time], trace norm
  double gap = 0.0;
  bool monotone = false;        // every sample eventually non-increasing
  bool gap_consistent = false;  // end-to-end decay at least ~ exp(-gap*t/2)
};

/// Trace-norm distance to the steady state for random initial states on a
/// time grid. Diagnostic only; reports non-applicability when the steady
/// state is not unique.
RelaxationProbe relaxation_probe(const LgksModel& model, int n_samples,
                                 const std::vector<double>& t_grid,
                                 std::uint64_t seed = 0,
                                 double tol = kDefaultTol,
                                 int dim_cap = kLiouvillianDimCap);

}  // namespace lgks
