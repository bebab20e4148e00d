#pragma once

#include <map>
#include <optional>

#include "lgks/superoperator.hpp"

namespace lgks {

// GKS coefficient matrix of a model in a traceless orthonormal basis:
// c_{ij} = sum_k gamma_k a_i^(k) a_j^(k)*, Hermitian and PSD by construction.
struct CMatrix {
  int dim = 0;  // d^2 - 1
  ComplexMatrix matrix;
  std::vector<ComplexMatrix> basis;  // the traceless set used
};

// One criterion's outcome. `applicable` means the hypotheses are met;
// `passed` means the conclusion (unique attractive steady state) is
// guaranteed. passed implies applicable.
struct CriterionVerdict {
  std::string criterion;
  bool applicable = false;
  bool passed = false;
  std::map<std::string, double> evidence;
  std::string notes;
};

struct GksCoefficients {
  Complex alpha0;        // identity coefficient, Tr(B)/d
  ComplexVector alpha;   // traceless coefficients, alpha_j = Tr(G_j^dag B)
};

/// Decompose B = alpha0 * I + sum_j alpha_j G_j over a traceless orthonormal
/// basis; the reconstruction is exact up to rounding.
GksCoefficients gks_decompose(const ComplexMatrix& b,
                              const std::vector<ComplexMatrix>& basis);

/// Assemble the c-matrix of a model, folding the rates into the channel
/// coefficients. Uses the canonical generalized Gell-Mann basis unless an
/// alternative traceless orthonormal basis is supplied.
CMatrix build_c_matrix(const LgksModel& model,
                       const std::optional<std::vector<ComplexMatrix>>& basis =
                           std::nullopt);

/// Spohn's decay-matrix criterion: with p = number of c-matrix eigenvalues at
/// zero (relative tolerance), the semigroup is relaxing when p < d/2; a
/// strictly positive c-matrix is the p = 0 shortcut.
CriterionVerdict spohn_rank_criterion(const LgksModel& model,
                                      double tol = kDefaultTol);

struct CommutantResult {
  int dimension = 0;
  std::vector<ComplexMatrix> basis;  // Frobenius-orthonormal
  RealVector singular_values;        // of the stacked commutator map
};

/// Solution space of [X, A_k] = 0 for all k, via the SVD kernel of the
/// stacked maps X -> [X, A_k]. Always contains the identity. Rejects an
/// empty operator list.
CommutantResult commutant(const std::vector<ComplexMatrix>& ops,
                          double tol = kDefaultTol);

/// Commutant applied twice; dimension d^2 means the set generates the full
/// matrix algebra.
CommutantResult bicommutant(const std::vector<ComplexMatrix>& ops,
                            double tol = kDefaultTol);

struct SpanCheck {
  bool self_adjoint = false;
  std::vector<double> residuals;  // least-squares residual of each B_i^dag
};

/// True iff every adjoint B_i^dag lies in span{B_j} up to tol * ||B_i||.
SpanCheck is_self_adjoint_span(const std::vector<ComplexMatrix>& ops,
                               double tol = kDefaultTol);

/// Spohn's operator criterion: span{B_i} self-adjoint and {B_i}'' the full
/// algebra imply a relaxing semigroup.
CriterionVerdict spohn_span_criterion(const LgksModel& model,
                                      double tol = kDefaultTol);

/// Frigerio: span{B_i} self-adjoint, a stationary state exists (automatic in
/// finite dimension) and {B_i}' trivial imply relaxation to a faithful state.
/// When the criterion passes, the oracle steady state's faithfulness is
/// checked and recorded in the evidence.
CriterionVerdict frigerio_criterion(const LgksModel& model,
                                    double tol = kDefaultTol,
                                    int dim_cap = kLiouvillianDimCap);

/// Evans: the semigroup is irreducible if and only if {H, B_i, B_i^dag}' is
/// trivial. Necessary and sufficient, so a failure is a genuine
/// non-uniqueness prediction.
CriterionVerdict evans_criterion(const LgksModel& model,
                                 double tol = kDefaultTol);

enum class LadderForm { lower, upper, neither };

/// Structural test in the given basis: `lower` iff exactly the first
/// subdiagonal is populated (all d-1 entries above tolerance, everything else
/// below), `upper` dually for the superdiagonal.
LadderForm is_ladder_form(const ComplexMatrix& m, double tol = kDefaultTol);

// Coefficients of one combination M = alpha0 H + sum_i (alpha_i B_i +
// beta_i B_i^dag); alpha/beta sized to the channel count.
struct CombinationSpec {
  Complex alpha0{0.0, 0.0};
  std::vector<Complex> alpha;
  std::vector<Complex> beta;
};

struct SearchPolicy {
  int random_draws = 32;
  std::uint64_t seed = 0;
};

/// Ladder-combination criterion for a single system: passes iff some
/// combination M has trivial {M, M^dag}' (the basis-independent surrogate
/// for unitary equivalence to a ladder operator). With no combination given,
/// tries each single channel, the channel sum, and seeded random draws from
/// the unit disc. A sufficient criterion: no witness means inconclusive, not
/// non-unique.
CriterionVerdict theorem1_check(const LgksModel& model,
                                const std::optional<CombinationSpec>& combo =
                                    std::nullopt,
                                const SearchPolicy& policy = {},
                                double tol = kDefaultTol);

/// Structural ladder witness: passes iff some channel is in ladder form in
/// the computational basis, or in the basis supplied through the unitary
/// change-of-basis matrix.
CriterionVerdict corollary1_check(const LgksModel& model,
                                  const std::optional<ComplexMatrix>&
                                      basis_change = std::nullopt,
                                  double tol = kDefaultTol);

/// Composite version: one combination M_j per tensor factor, default the sum
/// of channels supported only on site j (detected structurally); passes iff
/// the joint commutant of all {M_j, M_j^dag} is trivial. A single-site
/// layout delegates to theorem1_check.
CriterionVerdict theorem2_check(const LgksModel& model,
                                const CompositeLayout& layout,
                                const std::optional<std::vector<CombinationSpec>>&
                                    combos = std::nullopt,
                                const SearchPolicy& policy = {},
                                double tol = kDefaultTol);

/// Composite structural witness: passes iff every site carries some channel
/// that is the embedding of a ladder-form (or adjoint) local operator.
CriterionVerdict corollary2_check(const LgksModel& model,
                                  const CompositeLayout& layout,
                                  double tol = kDefaultTol);

struct AuditOptions {
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  int search_draws = 32;
  int dim_cap = kLiouvillianDimCap;
};

struct AuditReport {
  std::string model_name;
  int dim = 0;
  int n_channels = 0;
  std::optional<CompositeLayout> layout;
  std::vector<CriterionVerdict> verdicts;  // fixed criterion order
  SteadyStateResult oracle;
  SpectrumReport spectrum;
  bool oracle_ok = false;
  std::string oracle_note;
  bool consistent = false;  // no passing criterion contradicts the oracle
  AuditOptions options;
};

/// Run every checker plus the null-space/spectral oracle. Criterion failures
/// are data, never exceptions; oracle failures yield a partial report with
/// oracle_ok = false.
AuditReport audit(const LgksModel& model, const AuditOptions& options = {});

}  // namespace lgks
