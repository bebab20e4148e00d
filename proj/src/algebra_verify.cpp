#include "lgks/algebra_verify.hpp"

#include <cmath>
#include <limits>

namespace lgks {

ComplexMatrix build_ladder(const LadderSpec& spec) {
  if (spec.dim < 1) throw std::invalid_argument("build_ladder: dim must be >= 1");
  if (static_cast<int>(spec.subdiagonal.size()) != spec.dim - 1) {
    throw std::invalid_argument("build_ladder: need dim - 1 subdiagonal entries");
  }
  ComplexMatrix m = ComplexMatrix::Zero(spec.dim, spec.dim);
  for (int k = 0; k < spec.dim - 1; ++k) {
    if (std::abs(spec.subdiagonal[k]) == 0.0) {
      throw std::invalid_argument("build_ladder: zero entry at position " +
                                  std::to_string(k + 1));
    }
    m(k + 1, k) = spec.subdiagonal[k];
  }
  return m;
}

namespace {

// An entry is numerically "zero" when the working tolerance (or the hard
// 1e3 * eps floor) cannot distinguish it from zero relative to the largest
// entry; the ladder hypothesis is then not met at working precision.
bool spec_borderline(const LadderSpec& spec, double tol) {
  double largest = 0.0, smallest = std::numeric_limits<double>::infinity();
  for (const Complex& z : spec.subdiagonal) {
    largest = std::max(largest, std::abs(z));
    smallest = std::min(smallest, std::abs(z));
  }
  if (spec.subdiagonal.empty()) return false;
  const double guard =
      std::max(tol, 1e3 * std::numeric_limits<double>::epsilon());
  return smallest < guard * largest;
}

}  // namespace

PropOracleResult prop1_oracle(const LadderSpec& spec, double tol) {
  const ComplexMatrix b = build_ladder(spec);
  PropOracleResult result;
  result.borderline = spec_borderline(spec, tol);
  const CommutantResult comm = commutant({b, ComplexMatrix(b.adjoint())}, tol);
  result.commutant_dim = comm.dimension;
  result.holds = comm.dimension == 1;
  return result;
}

PropOracleResult prop2_oracle(const std::vector<LadderSpec>& specs, double tol,
                              int dim_cap) {
  if (specs.empty()) throw std::invalid_argument("prop2_oracle: need N >= 1");
  CompositeLayout layout;
  long total = 1;
  for (const LadderSpec& spec : specs) {
    layout.factor_dims.push_back(spec.dim);
    total *= spec.dim;
    if (total > dim_cap) {
      throw std::invalid_argument("prop2_oracle: total dimension exceeds cap " +
                                  std::to_string(dim_cap));
    }
  }
  PropOracleResult result;
  std::vector<ComplexMatrix> ops;
  for (size_t j = 0; j < specs.size(); ++j) {
    result.borderline = result.borderline || spec_borderline(specs[j], tol);
    const ComplexMatrix embedded =
        embed_local(build_ladder(specs[j]), static_cast<int>(j + 1), layout);
    ops.push_back(embedded);
    ops.push_back(embedded.adjoint());
  }
  const CommutantResult comm = commutant(ops, tol);
  result.commutant_dim = comm.dimension;
  result.holds = comm.dimension == 1;
  return result;
}

const ComplexMatrix& BlockDecomposition::at(int i, int j) const {
  if (i < 1 || i > d_head || j < 1 || j > d_head) {
    throw DimensionError("BlockDecomposition: block index out of range");
  }
  return blocks[static_cast<size_t>(i - 1) * d_head + (j - 1)];
}

BlockDecomposition block_decompose(const ComplexMatrix& x, int d_head) {
  if (x.rows() != x.cols()) {
    throw DimensionError("block_decompose: matrix must be square");
  }
  if (d_head < 1 || x.rows() % d_head != 0) {
    throw DimensionError("block_decompose: side " + std::to_string(x.rows()) +
                         " is not divisible by d_head " + std::to_string(d_head));
  }
  BlockDecomposition out;
  out.d_head = d_head;
  out.d_rest = static_cast<int>(x.rows()) / d_head;
  out.blocks.reserve(static_cast<size_t>(d_head) * d_head);
  for (int i = 0; i < d_head; ++i) {
    for (int j = 0; j < d_head; ++j) {
      out.blocks.push_back(
          x.block(i * out.d_rest, j * out.d_rest, out.d_rest, out.d_rest));
    }
  }
  return out;
}

ComplexMatrix reassemble(const BlockDecomposition& decomposition) {
  const int side = decomposition.d_head * decomposition.d_rest;
  ComplexMatrix x(side, side);
  for (int i = 1; i <= decomposition.d_head; ++i) {
    for (int j = 1; j <= decomposition.d_head; ++j) {
      x.block((i - 1) * decomposition.d_rest, (j - 1) * decomposition.d_rest,
              decomposition.d_rest, decomposition.d_rest) =
          decomposition.at(i, j);
    }
  }
  return x;
}

}  // namespace lgks
