#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qsense/states.hpp"
#include "qsense/types.hpp"

namespace qsense {

/// Single-site generator h, replicated on K sites as H(x) = x sum_i h_i.
struct GeneratorSpec {
  ComplexMatrix h;
  int sites = 1;
  double largest = 0.0;   ///< largest eigenvalue of h
  double smallest = 0.0;  ///< smallest eigenvalue of h

  /// Diagonalizes h to fill the spectral endpoints.
  static GeneratorSpec make(const ComplexMatrix& h, int sites);

  double gap() const { return largest - smallest; }
};

/// Smooth family x -> L_x of linear maps in Kraus form,
/// L_x[rho] = sum_j K_j(x) rho K_j(x)^dagger.
///
/// The Kraus generator must be a pure function of x; channels are values and
/// can be evaluated concurrently.
class ParamChannel {
 public:
  using KrausFn = std::function<std::vector<ComplexMatrix>(double)>;

  static constexpr double kDefaultStep = 1e-4;

  ParamChannel(Index dim, KrausFn kraus_at, double smoothness_step = kDefaultStep);

  Index dim() const { return dim_; }
  double smoothness_step() const { return step_; }
  std::vector<ComplexMatrix> kraus(double x) const;

 private:
  Index dim_;
  KrausFn kraus_at_;
  double step_;
};

namespace channels {

inline constexpr double kCptpTol = 1e-9;
/// apply() rejects outputs whose trace is further than this from one.
inline constexpr double kTraceDriftTol = 1e-8;
inline constexpr double kMinDerivativeStep = 1e-12;

/// sum_i h_i with h_i acting on site i.
ComplexMatrix total_generator(const GeneratorSpec& g, std::size_t dim_cap = kDefaultDimCap);

ParamChannel identity_channel(Index dim);

/// U(x) = exp(-i x sum_i h_i).
ParamChannel unitary_channel(const GeneratorSpec& g, std::size_t dim_cap = kDefaultDimCap);

/// x -> (1 - gamma) L_x[rho] + gamma tr(rho) I / dim.
ParamChannel depolarizing_compose(const ParamChannel& ch, double gamma);

/// Kraus sum applied to an arbitrary operator (no validation).
ComplexMatrix apply_linear(const ParamChannel& ch, const ComplexMatrix& op, double x);

DensityMatrix apply(const ParamChannel& ch, const DensityMatrix& rho, double x);

/// Central difference (L_{x+dx}[rho] - L_{x-dx}[rho]) / (2 dx).
ComplexMatrix channel_derivative(const ParamChannel& ch, const DensityMatrix& rho, double x,
                                 double dx = ParamChannel::kDefaultStep);

struct CptpReport {
  std::vector<double> probes;
  std::vector<double> deviations;  ///< max |sum K^dagger K - I| per probe
  double max_deviation = 0.0;
  bool passes = true;
};

CptpReport cptp_check(const ParamChannel& ch, const std::vector<double>& x_probes);

/// max |L_x[a r1 + (1-a) r2] - (a L_x[r1] + (1-a) L_x[r2])|.
double linearity_defect(const ParamChannel& ch, const ComplexMatrix& r1,
                        const ComplexMatrix& r2, double a, double x);

/// Serializable channel description: "unitary" or "unitary+depolarizing".
struct ChannelSpec {
  std::string kind = "unitary";
  ComplexMatrix h;
  int sites = 1;
  double gamma = 0.0;
};

ParamChannel build_channel(const ChannelSpec& spec);

}  // namespace channels
}  // namespace qsense
