#pragma once

#include "lgks/criteria.hpp"

namespace lgks {

// A strictly subdiagonal operator with prescribed nonzero entries.
struct LadderSpec {
  int dim = 0;
  std::vector<Complex> subdiagonal;  // dim - 1 entries, all of modulus > 0
};

/// Matrix with exactly the specified subdiagonal and zeros elsewhere.
/// Rejects zero entries (they break the ladder hypothesis).
ComplexMatrix build_ladder(const LadderSpec& spec);

struct PropOracleResult {
  bool holds = false;       // commutant dimension == 1
  int commutant_dim = 0;
  // Set when some entry is numerically indistinguishable from zero at the
  // working tolerance (relative to the largest entry), i.e. the
  // nonzero-subdiagonal hypothesis is not met at working precision.
  bool borderline = false;
};

/// Direct numerical check that {B, B^dag}' is trivial for a ladder operator.
/// Guaranteed true for every valid spec; false indicates a tolerance defect.
PropOracleResult prop1_oracle(const LadderSpec& spec, double tol = kDefaultTol);

/// Composite version: embeds one ladder operator per factor and checks that
/// the joint commutant of all 2N operators is trivial. Factor dimensions may
/// differ.
PropOracleResult prop2_oracle(const std::vector<LadderSpec>& specs,
                              double tol = kDefaultTol,
                              int dim_cap = kLiouvillianDimCap);

struct BlockDecomposition {
  int d_head = 0;
  int d_rest = 0;
  std::vector<ComplexMatrix> blocks;  // row-major d_head x d_head grid

  /// 1-based block access.
  const ComplexMatrix& at(int i, int j) const;
};

/// Splits a (d_head * d_rest)-dimensional matrix into the d_head x d_head
/// grid of d_rest x d_rest blocks X_{i,j}; reassemble() inverts it exactly.
BlockDecomposition block_decompose(const ComplexMatrix& x, int d_head);
ComplexMatrix reassemble(const BlockDecomposition& decomposition);

}  // namespace lgks
