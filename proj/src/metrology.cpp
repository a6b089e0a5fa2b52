#include "qsense/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qsense/error.hpp"
#include "qsense/linalg.hpp"

namespace qsense::metrology {

namespace {

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "states of dim " + std::to_string(a.dim()) +
                                                  " and " + std::to_string(b.dim()));
  }
}

void require_gap(const GeneratorSpec& g) {
  if (!(g.gap() > 1e-12)) {
    throw Error(ErrorCode::DegenerateSpectrum, "Lambda - lambda = " + std::to_string(g.gap()));
  }
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  const ComplexMatrix product =
      linalg::sqrt_psd(rho.matrix()) * linalg::sqrt_psd(sigma.matrix());
  const double root = linalg::trace_norm(product);
  return std::clamp(root * root, 0.0, 1.0);
}

double bures_distance_sq(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return 2.0 * (1.0 - std::sqrt(fidelity(rho, sigma)));
}

double qfi_sld(const DensityMatrix& rho, const ComplexMatrix& drho) {
  if (drho.rows() != rho.dim() || drho.cols() != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "drho shape does not match rho");
  }
  const double defect = linalg::hermitian_defect(drho);
  if (defect > 1e-8) {
    throw Error(ErrorCode::NotHermitian, "drho off Hermitian by " + std::to_string(defect));
  }
  const double trace = std::abs(drho.trace());
  if (trace > 1e-8) {
    throw Error(ErrorCode::NotTraceless, "tr(drho) = " + std::to_string(trace));
  }
  const linalg::EigenSystem es = linalg::eigh(rho.matrix());
  RealVector lambda = es.eigenvalues;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < kSldCutoff) lambda(i) = 0.0;
  }
  const ComplexMatrix d =
      es.eigenvectors.adjoint() * ((drho + drho.adjoint()) / 2.0) * es.eigenvectors;
  double sum = 0.0;
  for (Index j = 0; j < d.rows(); ++j) {
    for (Index k = 0; k < d.cols(); ++k) {
      const double denom = lambda(j) + lambda(k);
      if (denom > kSldCutoff) sum += 2.0 * std::norm(d(j, k)) / denom;
    }
  }
  return sum;
}

double bures_increment(const ParamChannel& ch, const DensityMatrix& rho0, double x, double dx) {
  const DensityMatrix here = channels::apply(ch, rho0, x);
  const DensityMatrix there = channels::apply(ch, rho0, x + dx);
  if (linalg::max_abs_diff(here.matrix(), there.matrix()) <= kIdenticalStateTol) return 0.0;
  return bures_distance_sq(here, there);
}

double qfi_fd(const ParamChannel& ch, const DensityMatrix& rho0, double x, double dx) {
  if (!(dx >= kMinFdStep && dx <= kMaxFdStep)) {
    throw Error(ErrorCode::StepOutOfRange, "dx = " + std::to_string(dx) +
                                               " outside [1e-6, 1e-2]");
  }
  return 4.0 * bures_increment(ch, rho0, x, dx) / (dx * dx);
}

SensitivityReport delta_x_min(double qfi, int n) {
  if (!(qfi >= 0.0) || n < 1) {
    throw Error(ErrorCode::ParameterOutOfRange, "need qfi >= 0 and N >= 1");
  }
  SensitivityReport report;
  report.qfi = qfi;
  report.n_repetitions = n;
  report.delta_x_min = qfi > 0.0 ? 1.0 / (std::sqrt(static_cast<double>(n)) * std::sqrt(qfi))
                                 : std::numeric_limits<double>::infinity();
  return report;
}

double bound_product(const GeneratorSpec& g, int n) {
  require_gap(g);
  if (n < 1) throw Error(ErrorCode::ParameterOutOfRange, "N must be >= 1");
  return 1.0 / (std::sqrt(static_cast<double>(n) * g.sites) * g.gap());
}

double bound_entangled(const GeneratorSpec& g, int n) {
  require_gap(g);
  if (n < 1) throw Error(ErrorCode::ParameterOutOfRange, "N must be >= 1");
  return 1.0 / (std::sqrt(static_cast<double>(n)) * g.sites * g.gap());
}

}  // namespace qsense::metrology
