#include "lgks/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "lgks/random.hpp"

namespace lgks {

namespace {

std::vector<ComplexMatrix> channel_ops(const LgksModel& model) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(model.channels.size());
  for (const Channel& ch : model.channels) ops.push_back(ch.op);
  return ops;
}

void put_complex(std::map<std::string, double>& evidence, const std::string& key,
                 Complex z) {
  evidence[key + "_re"] = z.real();
  evidence[key + "_im"] = z.imag();
}

ComplexMatrix build_combination(const LgksModel& model,
                                const CombinationSpec& combo) {
  if (combo.alpha.size() != model.channels.size() ||
      combo.beta.size() != model.channels.size()) {
    throw DimensionError(
        "combination: coefficient lists must match the channel count");
  }
  ComplexMatrix m = combo.alpha0 * model.hamiltonian;
  for (size_t i = 0; i < model.channels.size(); ++i) {
    m += combo.alpha[i] * model.channels[i].op;
    m += combo.beta[i] * model.channels[i].op.adjoint();
  }
  return m;
}

// Extracts the local operator when B acts as identity on every factor other
// than `site` (1-based), i.e. B == embed_local(b, site, layout) within
// tolerance. Returns nothing otherwise.
std::optional<ComplexMatrix> extract_site_local(const ComplexMatrix& b,
                                                int site,
                                                const CompositeLayout& layout,
                                                double tol) {
  const int n = layout.n_sites();
  long pre = 1, post = 1;
  for (int i = 0; i < site - 1; ++i) pre *= layout.factor_dims[i];
  for (int i = site; i < n; ++i) post *= layout.factor_dims[i];
  const int dj = layout.factor_dims[site - 1];
  const double scale = b.norm();
  if (scale == 0.0) return std::nullopt;

  ComplexMatrix local = ComplexMatrix::Zero(dj, dj);
  for (int k = 0; k < dj; ++k) {
    for (int l = 0; l < dj; ++l) {
      Complex sum = 0.0;
      for (long a = 0; a < pre; ++a) {
        for (long c = 0; c < post; ++c) {
          const long row = (a * dj + k) * post + c;
          const long col = (a * dj + l) * post + c;
          sum += b(row, col);
        }
      }
      local(k, l) = sum / static_cast<double>(pre * post);
    }
  }
  const double residual = (b - embed_local(local, site, layout)).norm();
  if (residual > std::max(tol, 1e-12) * scale) return std::nullopt;
  return local;
}

}  // namespace

GksCoefficients gks_decompose(const ComplexMatrix& b,
                              const std::vector<ComplexMatrix>& basis) {
  const int d = static_cast<int>(b.rows());
  if (b.rows() != b.cols()) throw DimensionError("gks_decompose: B must be square");
  if (static_cast<int>(basis.size()) != d * d - 1) {
    throw DimensionError("gks_decompose: basis must contain d^2 - 1 elements");
  }
  GksCoefficients coeffs;
  coeffs.alpha0 = b.trace() / static_cast<double>(d);
  coeffs.alpha.resize(d * d - 1);
  for (size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].rows() != d || basis[j].cols() != d) {
      throw DimensionError("gks_decompose: basis dimension mismatch");
    }
    coeffs.alpha(j) = (basis[j].adjoint() * b).trace();
  }
  return coeffs;
}

CMatrix build_c_matrix(const LgksModel& model,
                       const std::optional<std::vector<ComplexMatrix>>& basis) {
  require_valid(model);
  const int d = model.dim;
  CMatrix c;
  c.basis = basis ? *basis : traceless_orthonormal_basis(d);
  c.dim = d * d - 1;
  if (static_cast<int>(c.basis.size()) != c.dim) {
    throw DimensionError("build_c_matrix: basis must contain d^2 - 1 elements");
  }
  c.matrix = ComplexMatrix::Zero(c.dim, c.dim);
  for (const Channel& ch : model.channels) {
    const GksCoefficients coeffs = gks_decompose(ch.op, c.basis);
    c.matrix += ch.rate * (coeffs.alpha * coeffs.alpha.adjoint());
  }
  const double herm_residual = (c.matrix - c.matrix.adjoint()).norm();
  if (herm_residual > 1e-10 * std::max(1.0, c.matrix.norm())) {
    throw NumericalError("build_c_matrix: assembled matrix is not Hermitian");
  }
  return c;
}

CriterionVerdict spohn_rank_criterion(const LgksModel& model, double tol) {
  CriterionVerdict verdict;
  verdict.criterion = "spohn-rank";
  verdict.applicable = true;
  const CMatrix c = build_c_matrix(model);
  const HermitianEigenResult eig = hermitian_eigen(c.matrix);
  const double lambda_max = eig.values.size() > 0 ? eig.values.maxCoeff() : 0.0;
  if (eig.values.size() > 0 &&
      eig.values.minCoeff() < -1e-9 * std::max(lambda_max, 1.0)) {
    throw NumericalError("spohn_rank_criterion: c-matrix is not PSD");
  }
  const double threshold = tol * lambda_max;
  int p = 0;
  bool borderline = false;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) <= threshold) ++p;
    if (threshold > 0.0 && eig.values(i) >= threshold / 10.0 &&
        eig.values(i) <= threshold * 10.0) {
      borderline = true;
    }
  }
  verdict.passed = p < 0.5 * model.dim;
  verdict.evidence["p"] = p;
  verdict.evidence["hilbert_dim"] = model.dim;
  verdict.evidence["lambda_max"] = lambda_max;
  verdict.evidence["threshold"] = threshold;
  verdict.evidence["strictly_positive"] = (p == 0) ? 1.0 : 0.0;
  verdict.evidence["borderline"] = borderline ? 1.0 : 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    verdict.evidence["c_eigenvalue_" + std::to_string(i)] = eig.values(i);
  }
  if (verdict.passed) {
    verdict.notes = (p == 0)
                        ? "c-matrix strictly positive; semigroup relaxing"
                        : "zero eigenvalue degeneracy p below dim/2; relaxing";
  } else {
    verdict.notes = "zero eigenvalue degeneracy p = " + std::to_string(p) +
                    " is not below dim/2 = " + std::to_string(model.dim) + "/2";
  }
  if (borderline) {
    verdict.notes += "; borderline eigenvalue near the rank threshold";
  }
  return verdict;
}

CommutantResult commutant(const std::vector<ComplexMatrix>& ops, double tol) {
  if (ops.empty()) {
    throw std::invalid_argument("commutant: operator list is empty");
  }
  const int d = static_cast<int>(ops.front().rows());
  // The identity component of an operator constrains nothing, and keeping it
  // would let pure rounding noise set the scale of the stacked map. Work with
  // normalized traceless parts; operators that are multiples of the identity
  // (to rounding) drop out entirely.
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  std::vector<ComplexMatrix> reduced;
  for (const ComplexMatrix& a : ops) {
    if (a.rows() != d || a.cols() != d) {
      throw DimensionError("commutant: operators must be square, same dimension");
    }
    ComplexMatrix traceless = a - (a.trace() / static_cast<double>(d)) * id;
    const double scale = traceless.norm();
    if (scale > 100.0 * std::numeric_limits<double>::epsilon() *
                    std::max(a.norm(), 1e-300)) {
      reduced.push_back(traceless / scale);
    }
  }

  CommutantResult result;
  const int dd = d * d;
  if (reduced.empty()) {
    // Everything commutes with multiples of the identity.
    result.dimension = dd;
    for (int j = 1; j <= d; ++j) {
      for (int i = 1; i <= d; ++i) result.basis.push_back(matrix_unit(i, j, d));
    }
    return result;
  }
  ComplexMatrix stacked(static_cast<Eigen::Index>(reduced.size()) * dd, dd);
  for (size_t k = 0; k < reduced.size(); ++k) {
    // vec([X, A]) = (A^T kron I - I kron A) vec(X)
    stacked.middleRows(static_cast<Eigen::Index>(k) * dd, dd) =
        kron(reduced[k].transpose(), id) - kron(id, reduced[k]);
  }
  const NullSpaceResult kernel = null_space(stacked, tol);
  result.dimension = kernel.nullity;
  result.singular_values = kernel.singular_values;
  for (int i = 0; i < kernel.nullity; ++i) {
    result.basis.push_back(unvec(kernel.basis.col(i), d));
  }
  if (result.dimension < 1) {
    throw NumericalError("commutant: identity not detected in the kernel");
  }
  return result;
}

CommutantResult bicommutant(const std::vector<ComplexMatrix>& ops, double tol) {
  return commutant(commutant(ops, tol).basis, tol);
}

SpanCheck is_self_adjoint_span(const std::vector<ComplexMatrix>& ops,
                               double tol) {
  if (ops.empty()) {
    throw std::invalid_argument("is_self_adjoint_span: operator list is empty");
  }
  const int d = static_cast<int>(ops.front().rows());
  ComplexMatrix span(d * d, static_cast<Eigen::Index>(ops.size()));
  for (size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].rows() != d || ops[i].cols() != d) {
      throw DimensionError("is_self_adjoint_span: dimension mismatch");
    }
    span.col(i) = vec(ops[i]);
  }
  Eigen::BDCSVD<ComplexMatrix> svd(span, Eigen::ComputeThinU);
  const RealVector& sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > kDefaultTol * sigma_max) ++rank;
  }
  const ComplexMatrix q = svd.matrixU().leftCols(rank);

  SpanCheck check;
  check.self_adjoint = true;
  for (const ComplexMatrix& b : ops) {
    const ComplexVector target = vec(ComplexMatrix(b.adjoint()));
    const double residual = (target - q * (q.adjoint() * target)).norm();
    check.residuals.push_back(residual);
    if (residual > tol * std::max(b.norm(), 1e-300)) check.self_adjoint = false;
  }
  return check;
}

CriterionVerdict spohn_span_criterion(const LgksModel& model, double tol) {
  CriterionVerdict verdict;
  verdict.criterion = "spohn-span";
  const int full_dim = model.dim * model.dim;
  verdict.evidence["full_dim"] = full_dim;
  if (model.channels.empty()) {
    verdict.applicable = true;
    verdict.passed = false;
    verdict.notes = "no Lindblad channels; the trivial span generates nothing";
    return verdict;
  }
  const std::vector<ComplexMatrix> ops = channel_ops(model);
  const SpanCheck span = is_self_adjoint_span(ops, tol);
  verdict.applicable = span.self_adjoint;
  verdict.evidence["span_self_adjoint"] = span.self_adjoint ? 1.0 : 0.0;
  verdict.evidence["max_adjoint_residual"] =
      *std::max_element(span.residuals.begin(), span.residuals.end());
  if (!verdict.applicable) {
    verdict.notes = "span of the Lindblad operators is not self-adjoint";
    return verdict;
  }
  const CommutantResult bicomm = bicommutant(ops, tol);
  verdict.evidence["bicommutant_dim"] = bicomm.dimension;
  verdict.passed = bicomm.dimension == full_dim;
  verdict.notes = verdict.passed
                      ? "bicommutant is the full matrix algebra; relaxing"
                      : "bicommutant dimension " +
                            std::to_string(bicomm.dimension) +
                            " falls short of the full algebra";
  return verdict;
}

CriterionVerdict frigerio_criterion(const LgksModel& model, double tol,
                                    int dim_cap) {
  CriterionVerdict verdict;
  verdict.criterion = "frigerio";
  if (model.channels.empty()) {
    verdict.applicable = true;
    verdict.passed = false;
    verdict.notes = "no Lindblad channels; commutant of the empty span is "
                    "everything (stationary state exists: finite dimension)";
    return verdict;
  }
  const std::vector<ComplexMatrix> ops = channel_ops(model);
  const SpanCheck span = is_self_adjoint_span(ops, tol);
  verdict.applicable = span.self_adjoint;
  verdict.evidence["span_self_adjoint"] = span.self_adjoint ? 1.0 : 0.0;
  if (!verdict.applicable) {
    verdict.notes = "span of the Lindblad operators is not self-adjoint "
                    "(stationary state exists: finite dimension)";
    return verdict;
  }
  const CommutantResult comm = commutant(ops, tol);
  verdict.evidence["commutant_dim"] = comm.dimension;
  verdict.passed = comm.dimension == 1;
  if (!verdict.passed) {
    verdict.notes = "commutant of the Lindblad operators has dimension " +
                    std::to_string(comm.dimension);
    return verdict;
  }
  verdict.notes = "relaxing with a faithful steady state";
  // Record whether the oracle's steady state is indeed faithful.
  const SteadyStateResult oracle = steady_states(model, tol, dim_cap);
  if (oracle.multiplicity == 1 && oracle.extraction_ok) {
    const HermitianEigenResult eig = hermitian_eigen(oracle.states.front(), 1e-6);
    const double min_eig = eig.values.minCoeff();
    verdict.evidence["steady_min_eigenvalue"] = min_eig;
    verdict.evidence["faithful"] = (min_eig > tol) ? 1.0 : 0.0;
    if (min_eig <= tol) {
      verdict.notes += "; oracle state not numerically faithful, review tolerances";
    }
  } else {
    verdict.notes += "; oracle extraction unavailable for faithfulness check";
  }
  return verdict;
}

CriterionVerdict evans_criterion(const LgksModel& model, double tol) {
  CriterionVerdict verdict;
  verdict.criterion = "evans";
  verdict.applicable = true;
  std::vector<ComplexMatrix> ops;
  ops.push_back(model.hamiltonian);
  for (const Channel& ch : model.channels) {
    ops.push_back(ch.op);
    ops.push_back(ch.op.adjoint());
  }
  const CommutantResult comm = commutant(ops, tol);
  verdict.evidence["commutant_dim"] = comm.dimension;
  verdict.passed = comm.dimension == 1;
  verdict.notes = verdict.passed
                      ? "commutant of {H, B_i, B_i^dag} is trivial; irreducible"
                      : "commutant dimension " + std::to_string(comm.dimension) +
                            "; conserved projectors exist, steady state not unique";
  return verdict;
}

LadderForm is_ladder_form(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("is_ladder_form: square input");
  const int d = static_cast<int>(m.rows());
  const double scale = m.cwiseAbs().maxCoeff();
  const double threshold = tol * scale;
  bool lower = true, upper = true;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double mag = std::abs(m(i, j));
      if (i == j + 1) {
        if (mag <= threshold) lower = false;
      } else if (mag > threshold) {
        lower = false;
      }
      if (j == i + 1) {
        if (mag <= threshold) upper = false;
      } else if (mag > threshold) {
        upper = false;
      }
    }
  }
  if (d > 1 && scale == 0.0) return LadderForm::neither;
  if (lower) return LadderForm::lower;
  if (upper) return LadderForm::upper;
  return LadderForm::neither;
}

CriterionVerdict theorem1_check(const LgksModel& model,
                                const std::optional<CombinationSpec>& combo,
                                const SearchPolicy& policy, double tol) {
  CriterionVerdict verdict;
  verdict.criterion = "theorem-1";
  verdict.applicable = true;
  verdict.evidence["seed"] = static_cast<double>(policy.seed);

  struct Candidate {
    CombinationSpec spec;
    double kind;  // 0 user combo, 1 single channel, 2 channel sum, 3 random
    double index;
    std::string label;
  };
  std::vector<Candidate> candidates;
  const size_t n = model.channels.size();
  if (combo) {
    candidates.push_back({*combo, 0.0, 0.0, "supplied combination"});
  } else {
    for (size_t i = 0; i < n; ++i) {
      CombinationSpec spec;
      spec.alpha.assign(n, 0.0);
      spec.beta.assign(n, 0.0);
      spec.alpha[i] = 1.0;
      candidates.push_back({spec, 1.0, static_cast<double>(i + 1),
                            "channel " + std::to_string(i + 1)});
    }
    if (n > 1) {
      CombinationSpec spec;
      spec.alpha.assign(n, 1.0);
      spec.beta.assign(n, 0.0);
      candidates.push_back({spec, 2.0, 0.0, "sum of channels"});
    }
    Rng rng(policy.seed);
    for (int t = 0; t < policy.random_draws; ++t) {
      CombinationSpec spec;
      spec.alpha0 = random_unit_disc(rng);
      spec.alpha.resize(n);
      spec.beta.resize(n);
      for (size_t i = 0; i < n; ++i) spec.alpha[i] = random_unit_disc(rng);
      for (size_t i = 0; i < n; ++i) spec.beta[i] = random_unit_disc(rng);
      candidates.push_back({spec, 3.0, static_cast<double>(t),
                            "random draw " + std::to_string(t)});
    }
  }

  int min_dim = model.dim * model.dim + 1;
  int tried = 0;
  for (const Candidate& cand : candidates) {
    const ComplexMatrix m = build_combination(model, cand.spec);
    ++tried;
    const CommutantResult comm =
        commutant({m, ComplexMatrix(m.adjoint())}, tol);
    min_dim = std::min(min_dim, comm.dimension);
    if (comm.dimension == 1) {
      verdict.passed = true;
      verdict.evidence["witness_kind"] = cand.kind;
      verdict.evidence["witness_index"] = cand.index;
      verdict.evidence["commutant_dim"] = comm.dimension;
      put_complex(verdict.evidence, "witness_alpha0", cand.spec.alpha0);
      for (size_t i = 0; i < n; ++i) {
        put_complex(verdict.evidence, "witness_alpha_" + std::to_string(i + 1),
                    cand.spec.alpha[i]);
        put_complex(verdict.evidence, "witness_beta_" + std::to_string(i + 1),
                    cand.spec.beta[i]);
      }
      verdict.notes = "witness: " + cand.label +
                      " has trivial {M, M^dag} commutant; irreducible";
      break;
    }
  }
  verdict.evidence["candidates_tried"] = tried;
  if (!verdict.passed) {
    verdict.evidence["witness_kind"] = -1.0;
    verdict.evidence["min_commutant_dim"] = min_dim;
    verdict.notes = "inconclusive: no combination with trivial commutant found "
                    "among " + std::to_string(tried) +
                    " candidates (sufficient criterion only)";
  }
  return verdict;
}

CriterionVerdict corollary1_check(const LgksModel& model,
                                  const std::optional<ComplexMatrix>& basis_change,
                                  double tol) {
  CriterionVerdict verdict;
  verdict.criterion = "corollary-1";
  verdict.applicable = true;
  if (basis_change) {
    if (basis_change->rows() != model.dim || basis_change->cols() != model.dim) {
      throw DimensionError("corollary1_check: basis change dimension mismatch");
    }
    const double unitarity =
        (basis_change->adjoint() * (*basis_change) -
         ComplexMatrix::Identity(model.dim, model.dim)).norm();
    if (unitarity > std::max(tol, 1e-10) * std::sqrt(double(model.dim))) {
      throw std::invalid_argument(
          "corollary1_check: supplied basis change is not unitary, "
          "||U^dag U - I|| = " + std::to_string(unitarity));
    }
  }
  for (size_t i = 0; i < model.channels.size(); ++i) {
    ComplexMatrix b = model.channels[i].op;
    if (basis_change) b = basis_change->adjoint() * b * (*basis_change);
    const LadderForm form = is_ladder_form(b, tol);
    if (form != LadderForm::neither) {
      verdict.passed = true;
      verdict.evidence["witness_channel"] = static_cast<double>(i + 1);
      verdict.evidence["witness_form"] = form == LadderForm::lower ? 1.0 : 2.0;
      verdict.notes = "channel " + std::to_string(i + 1) + " is in " +
                      (form == LadderForm::lower ? "lower" : "upper") +
                      " ladder form";
      return verdict;
    }
  }
  verdict.evidence["witness_channel"] = 0.0;
  verdict.notes = "no channel is in ladder form in the inspected basis "
                  "(sufficient criterion only)";
  return verdict;
}

CriterionVerdict theorem2_check(const LgksModel& model,
                                const CompositeLayout& layout,
                                const std::optional<std::vector<CombinationSpec>>&
                                    combos,
                                const SearchPolicy& policy, double tol) {
  if (layout.total_dim() != model.dim) {
    throw DimensionError("theorem2_check: layout does not match the model dimension");
  }
  const int n_sites = layout.n_sites();
  if (n_sites == 1) {
    std::optional<CombinationSpec> single;
    if (combos) {
      if (combos->size() != 1) {
        throw DimensionError("theorem2_check: expected one combination per site");
      }
      single = combos->front();
    }
    CriterionVerdict verdict = theorem1_check(model, single, policy, tol);
    verdict.criterion = "theorem-2";
    verdict.notes += " (single-site layout, theorem-1 machinery)";
    return verdict;
  }

  CriterionVerdict verdict;
  verdict.criterion = "theorem-2";
  verdict.applicable = true;

  std::vector<ComplexMatrix> site_combinations;
  if (combos) {
    if (static_cast<int>(combos->size()) != n_sites) {
      throw DimensionError("theorem2_check: expected one combination per site");
    }
    for (const CombinationSpec& spec : *combos) {
      site_combinations.push_back(build_combination(model, spec));
    }
  } else {
    for (int j = 1; j <= n_sites; ++j) {
      ComplexMatrix mj = ComplexMatrix::Zero(model.dim, model.dim);
      int found = 0;
      for (const Channel& ch : model.channels) {
        if (extract_site_local(ch.op, j, layout, tol)) {
          mj += ch.op;
          ++found;
        }
      }
      verdict.evidence["site_" + std::to_string(j) + "_local_channels"] = found;
      if (found == 0 || mj.norm() == 0.0) {
        verdict.passed = false;
        verdict.notes = "inconclusive: no channel is supported only on site " +
                        std::to_string(j) + " (sufficient criterion only)";
        return verdict;
      }
      site_combinations.push_back(std::move(mj));
    }
  }

  std::vector<ComplexMatrix> ops;
  for (const ComplexMatrix& m : site_combinations) {
    ops.push_back(m);
    ops.push_back(m.adjoint());
  }
  const CommutantResult comm = commutant(ops, tol);
  verdict.evidence["commutant_dim"] = comm.dimension;
  verdict.passed = comm.dimension == 1;
  verdict.notes =
      verdict.passed
          ? "per-site combinations have a jointly trivial commutant; irreducible"
          : "inconclusive: joint commutant dimension " +
                std::to_string(comm.dimension) + " (sufficient criterion only)";
  return verdict;
}

CriterionVerdict corollary2_check(const LgksModel& model,
                                  const CompositeLayout& layout, double tol) {
  if (layout.total_dim() != model.dim) {
    throw DimensionError("corollary2_check: layout does not match the model dimension");
  }
  CriterionVerdict verdict;
  verdict.criterion = "corollary-2";
  verdict.applicable = true;
  bool all_sites = true;
  for (int j = 1; j <= layout.n_sites(); ++j) {
    int witness = 0;
    for (size_t i = 0; i < model.channels.size(); ++i) {
      const auto local =
          extract_site_local(model.channels[i].op, j, layout, tol);
      if (local && is_ladder_form(*local, tol) != LadderForm::neither) {
        witness = static_cast<int>(i + 1);
        break;
      }
    }
    verdict.evidence["site_" + std::to_string(j) + "_witness"] = witness;
    if (witness == 0) all_sites = false;
  }
  verdict.passed = all_sites;
  verdict.notes = all_sites
                      ? "every site carries an embedded ladder-form channel"
                      : "some site lacks an embedded ladder-form channel "
                        "(sufficient criterion only)";
  return verdict;
}

AuditReport audit(const LgksModel& model, const AuditOptions& options) {
  require_valid(model);
  AuditReport report;
  report.model_name = model.name;
  report.dim = model.dim;
  report.n_channels = static_cast<int>(model.channels.size());
  report.layout = model.layout;
  report.options = options;

  const CompositeLayout layout =
      model.layout ? *model.layout : CompositeLayout{{model.dim}};
  const SearchPolicy policy{options.search_draws, options.seed};
  const double tol = options.tol;

  auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      report.verdicts.push_back(fn());
    } catch (const std::exception& err) {
      CriterionVerdict verdict;
      verdict.criterion = name;
      verdict.applicable = false;
      verdict.passed = false;
      verdict.notes = std::string("checker error: ") + err.what();
      report.verdicts.push_back(std::move(verdict));
    }
  };
  guarded("spohn-rank", [&] { return spohn_rank_criterion(model, tol); });
  guarded("spohn-span", [&] { return spohn_span_criterion(model, tol); });
  guarded("frigerio",
          [&] { return frigerio_criterion(model, tol, options.dim_cap); });
  guarded("evans", [&] { return evans_criterion(model, tol); });
  guarded("theorem-1",
          [&] { return theorem1_check(model, std::nullopt, policy, tol); });
  guarded("corollary-1",
          [&] { return corollary1_check(model, std::nullopt, tol); });
  guarded("theorem-2", [&] {
    return theorem2_check(model, layout, std::nullopt, policy, tol);
  });
  guarded("corollary-2", [&] { return corollary2_check(model, layout, tol); });

  try {
    report.oracle = steady_states(model, tol, options.dim_cap);
    report.spectrum = spectrum_report(model, tol, options.dim_cap);
    report.oracle_ok = true;
  } catch (const std::exception& err) {
    report.oracle_ok = false;
    report.oracle_note = err.what();
  }

  report.consistent = report.oracle_ok;
  if (report.oracle_ok) {
    for (const CriterionVerdict& verdict : report.verdicts) {
      if (verdict.passed && report.oracle.multiplicity != 1) {
        report.consistent = false;
        report.oracle_note =
            "passing criterion '" + verdict.criterion +
            "' contradicts oracle multiplicity " +
            std::to_string(report.oracle.multiplicity) +
            "; numerical tolerance review needed";
      }
    }
  }
  return report;
}

}  // namespace lgks
