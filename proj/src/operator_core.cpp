#include "lgks/operator_core.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace lgks {

namespace {

void require_square(const ComplexMatrix& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(who) + ": matrix is " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", expected square");
  }
}

void require_same_square(const ComplexMatrix& a, const ComplexMatrix& b,
                         const char* who) {
  require_square(a, who);
  require_square(b, who);
  if (a.rows() != b.rows()) {
    throw DimensionError(std::string(who) + ": dimension mismatch " +
                         std::to_string(a.rows()) + " vs " +
                         std::to_string(b.rows()));
  }
}

}  // namespace

ComplexMatrix sigma_plus() { return matrix_unit(1, 2, 2); }
ComplexMatrix sigma_minus() { return matrix_unit(2, 1, 2); }

ComplexMatrix sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix sigma_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  require_square(a, "dagger");
  return a.adjoint();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_square(a, b, "commutator");
  return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_square(a, b, "anticommutator");
  return a * b + b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix matrix_unit(int i, int j, int d) {
  if (d < 1) throw DimensionError("matrix_unit: dimension must be positive");
  if (i < 1 || i > d || j < 1 || j > d) {
    throw DimensionError("matrix_unit: index (" + std::to_string(i) + "," +
                         std::to_string(j) + ") out of range for d=" +
                         std::to_string(d));
  }
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(i - 1, j - 1) = 1.0;
  return m;
}

std::vector<ComplexMatrix> traceless_orthonormal_basis(int d) {
  if (d < 2) {
    throw DimensionError("traceless_orthonormal_basis: d must be >= 2");
  }
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<size_t>(d) * d - 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = inv_sqrt2;
      g(k, j) = inv_sqrt2;
      basis.push_back(g);
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = Complex(0, -inv_sqrt2);
      g(k, j) = Complex(0, inv_sqrt2);
      basis.push_back(g);
    }
  }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    const double f = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int j = 0; j < l; ++j) g(j, j) = f;
    g(l, l) = -static_cast<double>(l) * f;
    basis.push_back(g);
  }
  return basis;
}

ComplexVector vec(const ComplexMatrix& a) {
  return Eigen::Map<const ComplexVector>(a.data(), a.size());
}

ComplexMatrix unvec(const ComplexVector& v, int d) {
  if (v.size() != static_cast<Eigen::Index>(d) * d) {
    throw DimensionError("unvec: vector length " + std::to_string(v.size()) +
                         " does not equal d^2 for d=" + std::to_string(d));
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

NullSpaceResult null_space(const ComplexMatrix& m, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) {
    throw std::invalid_argument("null_space: tol must lie in (0, 1)");
  }
  Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("null_space: SVD did not converge");
  }
  const RealVector& sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  const double threshold = tol * sigma_max;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++rank;
  }
  const int n = static_cast<int>(m.cols());
  NullSpaceResult result;
  result.nullity = n - rank;
  result.singular_values = sv;
  result.basis = svd.matrixV().rightCols(result.nullity);
  return result;
}

ComplexVector eigenvalues(const ComplexMatrix& a) {
  require_square(a, "eigenvalues");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalues: QR iteration did not converge");
  }
  return solver.eigenvalues();
}

HermitianEigenResult hermitian_eigen(const ComplexMatrix& a, double tol) {
  require_square(a, "hermitian_eigen");
  const double norm = a.norm();
  const double residual = (a - a.adjoint()).norm();
  if (residual > tol * norm) {
    throw std::invalid_argument(
        "hermitian_eigen: input is not Hermitian; ||A - A^dag||_F = " +
        std::to_string(residual));
  }
  ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eigen: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix expm(const ComplexMatrix& a) {
  require_square(a, "expm");
  ComplexMatrix result = a.exp();
  if (!result.allFinite()) {
    throw NumericalError("expm: result overflowed to non-finite values");
  }
  return result;
}

double trace_norm(const ComplexMatrix& a) {
  return Eigen::BDCSVD<ComplexMatrix>(a).singularValues().sum();
}

}  // namespace lgks
