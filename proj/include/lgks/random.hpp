#pragma once

#include <random>

#include "lgks/operator_core.hpp"

namespace lgks {

using Rng = std::mt19937_64;

/// Matrix of iid standard complex Gaussians (real and imaginary parts
/// N(0, 1/2) so that E|z|^2 = 1).
ComplexMatrix random_ginibre(int rows, int cols, Rng& rng);

ComplexMatrix random_hermitian(int d, Rng& rng);

/// Haar-distributed unitary via QR of a Ginibre matrix with phase fixing.
ComplexMatrix random_unitary(int d, Rng& rng);

/// G G^dag / Tr(G G^dag) for a Ginibre G: full-rank random density matrix.
ComplexMatrix random_density_matrix(int d, Rng& rng);

/// Uniform draw from the closed unit disc in the complex plane.
Complex random_unit_disc(Rng& rng);

}  // namespace lgks
