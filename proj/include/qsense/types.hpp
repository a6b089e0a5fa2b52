#pragma once

#include <complex>
#include <cstddef>
#include <random>

#include <Eigen/Dense>

namespace qsense {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Seedable generator used by every randomized operation.
using Rng = std::mt19937_64;

/// Largest Hilbert-space dimension any constructor will build (12 qubits).
inline constexpr std::size_t kDefaultDimCap = 4096;

}  // namespace qsense
