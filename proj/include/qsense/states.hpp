#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qsense/types.hpp"

namespace qsense {

/// Unit-norm state vector.
class PureState {
 public:
  static constexpr double kNormTol = 1e-10;

  /// Throws NotNormalized unless <psi|psi> = 1 within kNormTol.
  explicit PureState(ComplexVector amplitudes);

  /// Rescales a non-zero vector to unit norm.
  static PureState normalized(const ComplexVector& v);
  static PureState basis(Index dim, Index index);

  Index dim() const { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  ComplexVector amplitudes_;
};

/// Hermitian, positive semidefinite, unit-trace operator.
///
/// Construction symmetrizes Hermitian round-off, rejects eigenvalues below
/// -1e-10 and clamps the remaining negative dust to zero (renormalizing the
/// trace afterwards).
class DensityMatrix {
 public:
  static constexpr double kTraceTol = 1e-10;

  explicit DensityMatrix(const ComplexMatrix& m);

  static DensityMatrix maximally_mixed(Index dim);

  Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// Pure-state ensemble {p_i, |psi_i>} realizing rho = sum_i p_i |psi_i><psi_i|.
class Decomposition {
 public:
  static constexpr double kWeightTol = 1e-10;

  Decomposition(std::vector<double> weights, std::vector<PureState> states);

  std::size_t size() const { return weights_.size(); }
  Index dim() const { return states_.front().dim(); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<PureState>& states() const { return states_; }

 private:
  std::vector<double> weights_;
  std::vector<PureState> states_;
};

namespace states {

/// Terms with weight below this are dropped by decomposition constructors.
inline constexpr double kZeroWeight = 1e-14;
/// Eigenvalues at or below this do not enter eigen_decomposition.
inline constexpr double kEigenWeightCutoff = 1e-12;

DensityMatrix density_from_pure(const PureState& psi);
DensityMatrix mix(const Decomposition& d);

PureState product_state(const PureState& phi, int k, std::size_t dim_cap = kDefaultDimCap);

/// (|e_max>^{(x)K} + |e_min>^{(x)K}) / sqrt(2) for the extreme eigenvectors
/// of the single-site generator h.
PureState extremal_entangled_state(const ComplexMatrix& h, int k,
                                   std::size_t dim_cap = kDefaultDimCap);

/// (|e_max> + |e_min>) / sqrt(2) on one site.
PureState extremal_superposition(const ComplexMatrix& h);

/// GHZ state of K qubits, (|0...0> + |1...1>) / sqrt(2).
PureState ghz_state(int k, std::size_t dim_cap = kDefaultDimCap);

PureState random_pure(Index dim, Rng& rng);
PureState random_pure(Index dim, std::uint64_t seed);

/// Ginibre ensemble: G G^dagger / tr(G G^dagger) with G of shape dim x rank.
DensityMatrix random_density(Index dim, Index rank, Rng& rng);
DensityMatrix random_density(Index dim, Index rank, std::uint64_t seed);

/// Haar-random unitary: Gram-Schmidt on a complex-normal matrix.
ComplexMatrix random_unitary(Index dim, Rng& rng);
ComplexMatrix random_unitary(Index dim, std::uint64_t seed);

/// Random Hermitian matrix (G + G^dagger)/2 with complex-normal G.
ComplexMatrix random_hermitian(Index dim, Rng& rng);

Decomposition eigen_decomposition(const DensityMatrix& rho);

/// sqrt(q_j)|phi_j> = sum_i V_ji sqrt(p_i)|psi_i>, j = 0..m-1.
///
/// V must be an m x m unitary or an m x r isometry (r = d.size(), m >= r);
/// only its first r columns are used. Terms with q_j < kZeroWeight are dropped.
Decomposition unitary_mixed_decomposition(const Decomposition& d, const ComplexMatrix& v,
                                          Index m);

/// Random decomposition of rho with m terms, m drawn from
/// {rank, ..., rank + extra_max}, mixed by a Haar-random m x m unitary.
Decomposition random_decomposition(const DensityMatrix& rho, int extra_max, Rng& rng);

/// Reduced state of the first factor of a bipartite pure state whose
/// amplitudes are ordered as index = left * dim_right + right.
ComplexMatrix reduced_state(const PureState& psi, Index dim_left, Index dim_right);

/// tr(rho^2).
double purity(const ComplexMatrix& rho);

}  // namespace states
}  // namespace qsense
