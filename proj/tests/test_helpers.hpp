#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include <Eigen/QR>

#include "qsense/types.hpp"

namespace qsense::testing {

inline ComplexVector ket(std::initializer_list<Complex> amps) {
  ComplexVector v(static_cast<Index>(amps.size()));
  Index i = 0;
  for (const auto& a : amps) v(i++) = a;
  return v;
}

inline ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

inline double max_abs(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline ComplexMatrix diag(std::initializer_list<double> values) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(values.size()),
                                        static_cast<Index>(values.size()));
  Index i = 0;
  for (const double v : values) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

/// Unitary from a Householder QR of a complex-normal matrix. Test-side
/// generator, independent of the library's Gram-Schmidt sampler.
inline ComplexMatrix qr_unitary(Index n, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) g(r, c) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

inline ComplexMatrix random_matrix(Index n, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) g(r, c) = Complex(normal(rng), normal(rng));
  }
  return g;
}

/// Full-rank state V diag(p) V^dagger with a known spectrum p.
inline ComplexMatrix state_with_spectrum(const std::vector<double>& p, Rng& rng) {
  const auto n = static_cast<Index>(p.size());
  ComplexMatrix v = qr_unitary(n, rng);
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  double total = 0.0;
  for (const double x : p) total += x;
  for (Index i = 0; i < n; ++i) d(i, i) = p[static_cast<std::size_t>(i)] / total;
  return v * d * v.adjoint();
}

inline double variance(const ComplexMatrix& g, const ComplexVector& psi) {
  const double mean = psi.dot(g * psi).real();
  const double second = psi.dot(g * g * psi).real();
  return second - mean * mean;
}

/// Least-squares slope of log(err) against log(step).
inline double fitted_order(const std::vector<double>& steps, const std::vector<double>& errs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double x = std::log(steps[i]);
    const double y = std::log(errs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qsense::testing
