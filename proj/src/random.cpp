#include "lgks/random.hpp"

#include <cmath>

namespace lgks {

ComplexMatrix random_ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  ComplexMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      m(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return m;
}

ComplexMatrix random_hermitian(int d, Rng& rng) {
  ComplexMatrix g = random_ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_unitary(int d, Rng& rng) {
  ComplexMatrix g = random_ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (int j = 0; j < d; ++j) {
    Complex rjj = r(j, j);
    double mag = std::abs(rjj);
    q.col(j) *= (mag > 0) ? rjj / mag : Complex(1, 0);
  }
  return q;
}

ComplexMatrix random_density_matrix(int d, Rng& rng) {
  ComplexMatrix g = random_ginibre(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

Complex random_unit_disc(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = std::sqrt(unit(rng));
  const double theta = 2.0 * M_PI * unit(rng);
  return Complex(r * std::cos(theta), r * std::sin(theta));
}

}  // namespace lgks
