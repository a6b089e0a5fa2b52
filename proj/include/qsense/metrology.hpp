#pragma once

#include "qsense/channels.hpp"
#include "qsense/states.hpp"

namespace qsense {

/// Cramer-Rao minimum uncertainty for N repetitions.
struct SensitivityReport {
  double qfi = 0.0;
  int n_repetitions = 1;
  /// 1 / sqrt(N * qfi), +infinity when qfi == 0.
  double delta_x_min = 0.0;
};

namespace metrology {

/// SLD terms with lambda_j + lambda_k at or below this are skipped.
inline constexpr double kSldCutoff = 1e-12;
inline constexpr double kMinFdStep = 1e-6;
inline constexpr double kMaxFdStep = 1e-2;
/// States closer than this (max-abs) are treated as identical by the
/// finite-difference path; their Bures increment is exactly zero.
inline constexpr double kIdenticalStateTol = 64.0 * 2.220446049250313e-16;

/// ||sqrt(rho) sqrt(sigma)||_1^2, clamped into [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// 2 (1 - sqrt(F)), in [0, 2].
double bures_distance_sq(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Symmetric-logarithmic-derivative form
///   sum_{j,k} 2 |<j|drho|k>|^2 / (lambda_j + lambda_k)
/// in the eigenbasis of rho.
double qfi_sld(const DensityMatrix& rho, const ComplexMatrix& drho);

/// Bures distance between L_x[rho0] and L_{x+dx}[rho0].
double bures_increment(const ParamChannel& ch, const DensityMatrix& rho0, double x, double dx);

/// Finite-difference Bures curvature 4 d^2(rho(x), rho(x+dx)) / dx^2.
/// dx must lie in [1e-6, 1e-2].
double qfi_fd(const ParamChannel& ch, const DensityMatrix& rho0, double x,
              double dx = ParamChannel::kDefaultStep);

SensitivityReport delta_x_min(double qfi, int n);

/// Product-state limit 1 / (sqrt(N K) (Lambda - lambda)).
double bound_product(const GeneratorSpec& g, int n);

/// Entangled-state limit 1 / (sqrt(N) K (Lambda - lambda)).
double bound_entangled(const GeneratorSpec& g, int n);

}  // namespace metrology
}  // namespace qsense
