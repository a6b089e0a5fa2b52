#pragma once

#include <cstddef>

#include "qsense/types.hpp"

/// Dense complex linear algebra used by every other module.
///
/// All functions are pure. Hermitian inputs are accepted when the max-abs
/// entry of M - M^dagger is below kHermitianTol; they are symmetrized before
/// use. Anything further from Hermitian raises ErrorCode::NotHermitian.
namespace qsense::linalg {

inline constexpr double kHermitianTol = 1e-10;
/// Eigenvalues in [-kNegativeDustTol, 0) are treated as zero.
inline constexpr double kNegativeDustTol = 1e-10;

struct EigenSystem {
  /// Ascending.
  RealVector eigenvalues;
  /// Orthonormal columns. Each column is phase-fixed so that its first
  /// largest-magnitude component is real and positive.
  ComplexMatrix eigenvectors;
};

/// Max-abs entry of M - M^dagger.
double hermitian_defect(const ComplexMatrix& m);

/// Max-abs entry of A - B. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Throws DimensionMismatch for non-square or empty input and
/// NumericalFailure for NaN/Inf entries.
void require_square_finite(const ComplexMatrix& m);

EigenSystem eigh(const ComplexMatrix& m);

/// V diag(lambda) V^dagger.
ComplexMatrix reconstruct(const EigenSystem& es);

/// Principal square root of a positive semidefinite matrix. Negative dust
/// and positive eigenvalues at the round-off floor are zeroed first.
ComplexMatrix sqrt_psd(const ComplexMatrix& m);

/// tr sqrt(A A^dagger), the sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// exp(-i t H) for Hermitian H.
ComplexMatrix expm_i_hermitian(const ComplexMatrix& h, double t);

/// Kronecker product. Works for any shape (vectors included); throws
/// DimensionOverflow when either result extent exceeds dim_cap.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b,
                     std::size_t dim_cap = kDefaultDimCap);

/// Pauli matrices and identity, handy for tests and CLI defaults.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace qsense::linalg
