#pragma once

#include <random>

#include "renyi/quantum.hpp"

namespace renyi::random {

using Rng = std::mt19937_64;

/// Ginibre matrix with i.i.d. standard complex Gaussian entries.
CMatrix ginibre(int rows, int cols, Rng& rng);
/// Haar-ish unitary from the QR decomposition of a Ginibre matrix.
CMatrix unitary(int n, Rng& rng);
/// rows x cols isometry (rows >= cols).
CMatrix isometry(int rows, int cols, Rng& rng);
/// Random PSD matrix G G^dagger with the given rank (rank <= 0 means full).
HermitianOperator psd(int n, Rng& rng, int rank = 0);
/// psd(n) normalized to unit trace.
HermitianOperator density(int n, Rng& rng, int rank = 0);
/// Random Hermitian matrix (G + G^dagger)/2.
HermitianOperator hermitian(int n, Rng& rng);
/// Diagonal density matrix with entries drawn uniformly then normalized.
HermitianOperator diagonal_density(int n, Rng& rng);
/// Random CPTP map with the given number of Kraus operators.
QChannel channel(int dim_in, int dim_out, int num_kraus, Rng& rng);
/// Random CP (not necessarily trace preserving) map.
QChannel cp_map(int dim_in, int dim_out, int num_kraus, Rng& rng);

}  // namespace renyi::random
