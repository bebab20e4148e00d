#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace lgks {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Relative rank/kernel tolerance used everywhere unless overridden.
inline constexpr double kDefaultTol = 1e-9;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a dense solver fails to converge or produces non-finite output.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Spin-1/2 ladder operators and Pauli matrices. sigma_plus = |1><2|,
// sigma_minus = |2><1| in the 1-based computational basis.
ComplexMatrix sigma_plus();
ComplexMatrix sigma_minus();
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();

/// Conjugate transpose; input must be square.
ComplexMatrix dagger(const ComplexMatrix& a);

/// [A, B] = AB - BA
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// {A, B} = AB + BA
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product; satisfies kron(A,B)*kron(C,D) == kron(AC, BD).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// E_{i,j}: the d x d matrix with a single unit entry at 1-based (i, j).
ComplexMatrix matrix_unit(int i, int j, int d);

/// Generalized Gell-Mann set: d^2 - 1 traceless matrices, orthonormal under
/// the Frobenius inner product Tr(G_i^dag G_j) = delta_ij, ordered as the
/// symmetric family, then the antisymmetric family, then the diagonal family.
/// For d = 2 this is exactly {sigma_x, sigma_y, sigma_z} / sqrt(2).
std::vector<ComplexMatrix> traceless_orthonormal_basis(int d);

// Column-stacking vectorization. unvec(vec(A), d) == A exactly, and
// <vec(A), vec(B)> == Tr(A^dag B).
ComplexVector vec(const ComplexMatrix& a);
ComplexMatrix unvec(const ComplexVector& v, int d);

struct NullSpaceResult {
  ComplexMatrix basis;         // orthonormal columns spanning the kernel
  int nullity = 0;
  RealVector singular_values;  // descending
};

/// Kernel of a (possibly rectangular) matrix via SVD. A singular value counts
/// as zero when sigma <= tol * sigma_max; sigma_max == 0 returns the whole
/// space. tol must lie in (0, 1).
NullSpaceResult null_space(const ComplexMatrix& m, double tol = kDefaultTol);

/// All eigenvalues of a general square complex matrix, unordered, with
/// algebraic multiplicity. Throws NumericalError on convergence failure.
ComplexVector eigenvalues(const ComplexMatrix& a);

struct HermitianEigenResult {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // unitary; column k pairs with values[k]
};

/// Eigendecomposition of a Hermitian matrix. The input must satisfy
/// ||A - A^dag||_F <= tol * ||A||_F; the symmetrized matrix is decomposed.
HermitianEigenResult hermitian_eigen(const ComplexMatrix& a, double tol = 1e-8);

/// Matrix exponential (scaling-and-squaring). Throws NumericalError if the
/// result overflows to non-finite values.
ComplexMatrix expm(const ComplexMatrix& a);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& a);

}  // namespace lgks
