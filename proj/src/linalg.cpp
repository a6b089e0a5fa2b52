#include "qsense/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "qsense/error.hpp"

namespace qsense::linalg {

namespace {

// Absolute accuracy of a backward-stable Hermitian eigensolver on an n x n
// matrix; eigenvalues below this carry no information.
double eigen_noise_floor(Index n, double spectral_radius) {
  return 8.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
         spectral_radius;
}

ComplexMatrix symmetrized_hermitian(const ComplexMatrix& m) {
  require_square_finite(m);
  const double defect = hermitian_defect(m);
  if (defect > kHermitianTol) {
    throw Error(ErrorCode::NotHermitian,
                "max |M - M^dagger| = " + std::to_string(defect));
  }
  return (m + m.adjoint()) / 2.0;
}

void fix_phases(ComplexMatrix& vectors) {
  for (Index c = 0; c < vectors.cols(); ++c) {
    auto col = vectors.col(c);
    const double largest = col.cwiseAbs().maxCoeff();
    Index pivot = 0;
    for (Index r = 0; r < col.size(); ++r) {
      if (std::abs(col(r)) >= largest - 1e-12) {
        pivot = r;
        break;
      }
    }
    const Complex z = col(pivot);
    if (std::abs(z) > 0.0) col *= std::conj(z) / std::abs(z);
  }
}

}  // namespace

double hermitian_defect(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "max_abs_diff shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

void require_square_finite(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected a non-empty square matrix, got " + std::to_string(m.rows()) +
                    "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::NumericalFailure, "matrix has non-finite entries");
  }
}

EigenSystem eigh(const ComplexMatrix& m) {
  const ComplexMatrix herm = symmetrized_hermitian(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
  }
  EigenSystem es{solver.eigenvalues(), solver.eigenvectors()};
  fix_phases(es.eigenvectors);
  return es;
}

ComplexMatrix reconstruct(const EigenSystem& es) {
  return es.eigenvectors * es.eigenvalues.cast<Complex>().asDiagonal() *
         es.eigenvectors.adjoint();
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
  EigenSystem es = eigh(m);
  const double lowest = es.eigenvalues.minCoeff();
  if (lowest < -kNegativeDustTol) {
    throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(lowest) + " < 0");
  }
  const double floor =
      eigen_noise_floor(m.rows(), es.eigenvalues.cwiseAbs().maxCoeff());
  for (Index i = 0; i < es.eigenvalues.size(); ++i) {
    double& v = es.eigenvalues(i);
    v = v <= floor ? 0.0 : std::sqrt(v);
  }
  return reconstruct(es);
}

double trace_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (!m.allFinite()) {
    throw Error(ErrorCode::NumericalFailure, "trace_norm of non-finite matrix");
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "SVD did not converge");
  }
  return svd.singularValues().sum();
}

ComplexMatrix expm_i_hermitian(const ComplexMatrix& h, double t) {
  const EigenSystem es = eigh(h);
  ComplexVector phases(es.eigenvalues.size());
  for (Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -t * es.eigenvalues(i)));
  }
  return es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t dim_cap) {
  const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  if (rows > dim_cap || cols > dim_cap) {
    throw Error(ErrorCode::DimensionOverflow,
                "tensor product extent " + std::to_string(std::max(rows, cols)) +
                    " exceeds cap " + std::to_string(dim_cap));
  }
  return Eigen::kroneckerProduct(a, b).eval();
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace qsense::linalg
