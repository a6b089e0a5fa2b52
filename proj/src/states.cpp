#include "qsense/states.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "qsense/error.hpp"
#include "qsense/linalg.hpp"

namespace qsense {

namespace {

ComplexMatrix complex_normal_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  const double scale = 1.0 / std::sqrt(2.0);
  // Column-major fill order is part of the seeded contract.
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im) * scale;
    }
  }
  return g;
}

}  // namespace

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "pure state needs dim >= 1");
  }
  if (!amplitudes_.allFinite()) {
    throw Error(ErrorCode::NumericalFailure, "pure state has non-finite amplitudes");
  }
  const double norm_sq = amplitudes_.squaredNorm();
  if (std::abs(norm_sq - 1.0) > kNormTol) {
    throw Error(ErrorCode::NotNormalized, "<psi|psi> = " + std::to_string(norm_sq));
  }
}

PureState PureState::normalized(const ComplexVector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::NotNormalized, "cannot normalize a zero or non-finite vector");
  }
  return PureState(v / norm);
}

PureState PureState::basis(Index dim, Index index) {
  if (index < 0 || index >= dim) {
    throw Error(ErrorCode::ParameterOutOfRange, "basis index out of range");
  }
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
  linalg::require_square_finite(m);
  const double defect = linalg::hermitian_defect(m);
  if (defect > linalg::kHermitianTol) {
    throw Error(ErrorCode::NotHermitian, "density matrix off Hermitian by " +
                                             std::to_string(defect));
  }
  matrix_ = (m + m.adjoint()) / 2.0;
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > kTraceTol) {
    throw Error(ErrorCode::NotTraceOne, "trace = " + std::to_string(trace));
  }
  if (matrix_.rows() == 1) {
    matrix_(0, 0) = 1.0;
    return;
  }
  linalg::EigenSystem es = linalg::eigh(matrix_);
  const double lowest = es.eigenvalues.minCoeff();
  if (lowest < -linalg::kNegativeDustTol) {
    throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(lowest) + " < 0");
  }
  if (lowest < 0.0) {
    es.eigenvalues = es.eigenvalues.cwiseMax(0.0);
    es.eigenvalues /= es.eigenvalues.sum();
    matrix_ = linalg::reconstruct(es);
    matrix_ = (matrix_ + matrix_.adjoint()).eval() / 2.0;
  }
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

Decomposition::Decomposition(std::vector<double> weights, std::vector<PureState> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (weights_.empty() || weights_.size() != states_.size()) {
    throw Error(ErrorCode::WeightMismatch,
                "decomposition needs one weight per state and at least one term");
  }
  for (const double p : weights_) {
    if (!(p >= 0.0 && p <= 1.0 + kWeightTol)) {
      throw Error(ErrorCode::WeightMismatch, "weight " + std::to_string(p) + " outside [0,1]");
    }
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > kWeightTol) {
    throw Error(ErrorCode::WeightMismatch, "weights sum to " + std::to_string(total));
  }
  for (const auto& s : states_) {
    if (s.dim() != states_.front().dim()) {
      throw Error(ErrorCode::DimensionMismatch, "decomposition states differ in dimension");
    }
  }
}

namespace states {

DensityMatrix density_from_pure(const PureState& psi) {
  const ComplexVector& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

DensityMatrix mix(const Decomposition& d) {
  ComplexMatrix rho = ComplexMatrix::Zero(d.dim(), d.dim());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const ComplexVector& a = d.states()[i].amplitudes();
    rho.noalias() += d.weights()[i] * (a * a.adjoint());
  }
  return DensityMatrix(rho);
}

PureState product_state(const PureState& phi, int k, std::size_t dim_cap) {
  if (k < 1) throw Error(ErrorCode::ParameterOutOfRange, "K must be >= 1");
  ComplexMatrix acc = phi.amplitudes();
  for (int i = 1; i < k; ++i) acc = linalg::tensor(acc, phi.amplitudes(), dim_cap);
  return PureState(acc.col(0));
}

PureState extremal_superposition(const ComplexMatrix& h) {
  const linalg::EigenSystem es = linalg::eigh(h);
  const Index n = es.eigenvalues.size();
  if (es.eigenvalues(n - 1) - es.eigenvalues(0) < 1e-12) {
    throw Error(ErrorCode::DegenerateSpectrum, "generator has a single eigenvalue");
  }
  return PureState::normalized(es.eigenvectors.col(n - 1) + es.eigenvectors.col(0));
}

PureState extremal_entangled_state(const ComplexMatrix& h, int k, std::size_t dim_cap) {
  if (k < 1) throw Error(ErrorCode::ParameterOutOfRange, "K must be >= 1");
  const linalg::EigenSystem es = linalg::eigh(h);
  const Index n = es.eigenvalues.size();
  if (es.eigenvalues(n - 1) - es.eigenvalues(0) < 1e-12) {
    throw Error(ErrorCode::DegenerateSpectrum, "generator has a single eigenvalue");
  }
  const PureState top(es.eigenvectors.col(n - 1));
  const PureState bottom(es.eigenvectors.col(0));
  const ComplexVector sum = product_state(top, k, dim_cap).amplitudes() +
                            product_state(bottom, k, dim_cap).amplitudes();
  return PureState::normalized(sum);
}

PureState ghz_state(int k, std::size_t dim_cap) {
  return extremal_entangled_state(linalg::pauli_z() / 2.0, k, dim_cap);
}

PureState random_pure(Index dim, Rng& rng) {
  if (dim < 1) throw Error(ErrorCode::ParameterOutOfRange, "dim must be >= 1");
  return PureState::normalized(complex_normal_matrix(dim, 1, rng).col(0));
}

PureState random_pure(Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure(dim, rng);
}

DensityMatrix random_density(Index dim, Index rank, Rng& rng) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw Error(ErrorCode::ParameterOutOfRange, "need 1 <= rank <= dim");
  }
  const ComplexMatrix g = complex_normal_matrix(dim, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

DensityMatrix random_density(Index dim, Index rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rank, rng);
}

ComplexMatrix random_unitary(Index dim, Rng& rng) {
  if (dim < 1) throw Error(ErrorCode::ParameterOutOfRange, "dim must be >= 1");
  ComplexMatrix q = complex_normal_matrix(dim, dim, rng);
  // Modified Gram-Schmidt.
  for (Index c = 0; c < dim; ++c) {
    for (Index p = 0; p < c; ++p) {
      const Complex overlap = q.col(p).dot(q.col(c));
      q.col(c) -= overlap * q.col(p);
    }
    const double norm = q.col(c).norm();
    if (norm < 1e-12) {
      throw Error(ErrorCode::NumericalFailure, "Gram-Schmidt hit a dependent column");
    }
    q.col(c) /= norm;
  }
  return q;
}

ComplexMatrix random_unitary(Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

ComplexMatrix random_hermitian(Index dim, Rng& rng) {
  const ComplexMatrix g = complex_normal_matrix(dim, dim, rng);
  return (g + g.adjoint()) / 2.0;
}

Decomposition eigen_decomposition(const DensityMatrix& rho) {
  const linalg::EigenSystem es = linalg::eigh(rho.matrix());
  std::vector<double> weights;
  std::vector<PureState> members;
  // Descending weight order.
  for (Index i = es.eigenvalues.size() - 1; i >= 0; --i) {
    if (es.eigenvalues(i) > kEigenWeightCutoff) {
      weights.push_back(es.eigenvalues(i));
      members.push_back(PureState::normalized(es.eigenvectors.col(i)));
    }
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= total;
  return Decomposition(std::move(weights), std::move(members));
}

Decomposition unitary_mixed_decomposition(const Decomposition& d, const ComplexMatrix& v,
                                          Index m) {
  const auto r = static_cast<Index>(d.size());
  if (m < r || v.rows() != m || (v.cols() != m && v.cols() != r)) {
    throw Error(ErrorCode::NotIsometry, "mixing matrix must be m x m or m x r with m >= r");
  }
  const ComplexMatrix gram = v.adjoint() * v;
  const double defect =
      linalg::max_abs_diff(gram, ComplexMatrix::Identity(v.cols(), v.cols()));
  if (defect > 1e-10) {
    throw Error(ErrorCode::NotIsometry, "V^dagger V deviates from identity by " +
                                            std::to_string(defect));
  }
  // Columns are sqrt(p_i)|psi_i>.
  ComplexMatrix scaled(d.dim(), r);
  for (Index i = 0; i < r; ++i) {
    scaled.col(i) = std::sqrt(d.weights()[i]) * d.states()[i].amplitudes();
  }
  const ComplexMatrix mixed = scaled * v.leftCols(r).transpose();

  std::vector<double> weights;
  std::vector<PureState> members;
  for (Index j = 0; j < m; ++j) {
    const double q = mixed.col(j).squaredNorm();
    if (q < kZeroWeight) continue;
    weights.push_back(q);
    members.push_back(PureState::normalized(mixed.col(j)));
  }
  return Decomposition(std::move(weights), std::move(members));
}

Decomposition random_decomposition(const DensityMatrix& rho, int extra_max, Rng& rng) {
  const Decomposition canonical = eigen_decomposition(rho);
  const auto rank = static_cast<Index>(canonical.size());
  std::uniform_int_distribution<int> extra(0, std::max(extra_max, 0));
  const Index m = rank + extra(rng);
  const ComplexMatrix v = random_unitary(m, rng);
  return unitary_mixed_decomposition(canonical, v, m);
}

ComplexMatrix reduced_state(const PureState& psi, Index dim_left, Index dim_right) {
  if (dim_left * dim_right != psi.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "bipartition does not match state dimension");
  }
  ComplexMatrix a(dim_left, dim_right);
  for (Index l = 0; l < dim_left; ++l) {
    for (Index r = 0; r < dim_right; ++r) a(l, r) = psi.amplitudes()(l * dim_right + r);
  }
  return a * a.adjoint();
}

double purity(const ComplexMatrix& rho) { return (rho * rho).trace().real(); }

}  // namespace states
}  // namespace qsense
