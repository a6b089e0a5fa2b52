#include "qsense/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsense/error.hpp"
#include "qsense/linalg.hpp"

namespace qsense {

GeneratorSpec GeneratorSpec::make(const ComplexMatrix& h, int sites) {
  if (sites < 1) throw Error(ErrorCode::ParameterOutOfRange, "K must be >= 1");
  const linalg::EigenSystem es = linalg::eigh(h);
  GeneratorSpec g;
  g.h = (h + h.adjoint()) / 2.0;
  g.sites = sites;
  g.smallest = es.eigenvalues(0);
  g.largest = es.eigenvalues(es.eigenvalues.size() - 1);
  return g;
}

ParamChannel::ParamChannel(Index dim, KrausFn kraus_at, double smoothness_step)
    : dim_(dim), kraus_at_(std::move(kraus_at)), step_(smoothness_step) {
  if (dim_ < 1) throw Error(ErrorCode::DimensionMismatch, "channel dim must be >= 1");
  if (!kraus_at_) throw Error(ErrorCode::ConfigError, "channel has no Kraus generator");
  if (!(step_ > 0.0)) throw Error(ErrorCode::StepTooSmall, "smoothness step must be > 0");
}

std::vector<ComplexMatrix> ParamChannel::kraus(double x) const {
  std::vector<ComplexMatrix> ops = kraus_at_(x);
  for (const auto& k : ops) {
    if (k.rows() != dim_ || k.cols() != dim_) {
      throw Error(ErrorCode::DimensionMismatch, "Kraus operator has wrong shape");
    }
  }
  return ops;
}

namespace channels {

ComplexMatrix total_generator(const GeneratorSpec& g, std::size_t dim_cap) {
  const Index site_dim = g.h.rows();
  double total_dim = 1.0;
  for (int i = 0; i < g.sites; ++i) total_dim *= static_cast<double>(site_dim);
  if (total_dim > static_cast<double>(dim_cap)) {
    throw Error(ErrorCode::DimensionOverflow,
                "dim(h)^K = " + std::to_string(total_dim) + " exceeds cap");
  }
  const ComplexMatrix eye = ComplexMatrix::Identity(site_dim, site_dim);
  const auto dim = static_cast<Index>(total_dim);
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (int site = 0; site < g.sites; ++site) {
    ComplexMatrix term = site == 0 ? g.h : eye;
    for (int j = 1; j < g.sites; ++j) {
      term = linalg::tensor(term, j == site ? g.h : eye, dim_cap);
    }
    sum += term;
  }
  return sum;
}

ParamChannel identity_channel(Index dim) {
  return ParamChannel(dim, [dim](double) {
    return std::vector<ComplexMatrix>{ComplexMatrix::Identity(dim, dim)};
  });
}

ParamChannel unitary_channel(const GeneratorSpec& g, std::size_t dim_cap) {
  // The spectrum of the total generator is computed once; U(x) is rebuilt
  // from it for every x.
  auto spectrum =
      std::make_shared<const linalg::EigenSystem>(linalg::eigh(total_generator(g, dim_cap)));
  const Index dim = spectrum->eigenvalues.size();
  return ParamChannel(dim, [spectrum](double x) {
    ComplexVector phases(spectrum->eigenvalues.size());
    for (Index i = 0; i < phases.size(); ++i) {
      phases(i) = std::exp(Complex(0.0, -x * spectrum->eigenvalues(i)));
    }
    ComplexMatrix u =
        spectrum->eigenvectors * phases.asDiagonal() * spectrum->eigenvectors.adjoint();
    return std::vector<ComplexMatrix>{std::move(u)};
  });
}

ParamChannel depolarizing_compose(const ParamChannel& ch, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw Error(ErrorCode::ParameterOutOfRange, "gamma must lie in [0,1]");
  }
  const Index dim = ch.dim();
  // Complete depolarization has Kraus set {|a><b| / sqrt(dim)}.
  return ParamChannel(
      dim,
      [ch, gamma, dim](double x) {
        std::vector<ComplexMatrix> ops;
        if (gamma < 1.0) {
          const double keep = std::sqrt(1.0 - gamma);
          for (auto& k : ch.kraus(x)) ops.push_back(keep * k);
        }
        if (gamma > 0.0) {
          const double amp = std::sqrt(gamma / static_cast<double>(dim));
          for (Index a = 0; a < dim; ++a) {
            for (Index b = 0; b < dim; ++b) {
              ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
              e(a, b) = amp;
              ops.push_back(std::move(e));
            }
          }
        }
        return ops;
      },
      ch.smoothness_step());
}

ComplexMatrix apply_linear(const ParamChannel& ch, const ComplexMatrix& op, double x) {
  if (op.rows() != ch.dim() || op.cols() != ch.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "operator dim " + std::to_string(op.rows()) + " vs channel dim " +
                    std::to_string(ch.dim()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim(), ch.dim());
  for (const auto& k : ch.kraus(x)) out.noalias() += k * op * k.adjoint();
  return out;
}

DensityMatrix apply(const ParamChannel& ch, const DensityMatrix& rho, double x) {
  ComplexMatrix out = apply_linear(ch, rho.matrix(), x);
  const double trace = out.trace().real();
  if (std::abs(trace - 1.0) > kTraceDriftTol) {
    throw Error(ErrorCode::CPTPViolation,
                "output trace " + std::to_string(trace) + " at x = " + std::to_string(x));
  }
  out /= trace;
  return DensityMatrix((out + out.adjoint()) / 2.0);
}

ComplexMatrix channel_derivative(const ParamChannel& ch, const DensityMatrix& rho, double x,
                                 double dx) {
  if (!(dx >= kMinDerivativeStep)) {
    throw Error(ErrorCode::StepTooSmall, "dx = " + std::to_string(dx));
  }
  const ComplexMatrix ahead = apply(ch, rho, x + dx).matrix();
  const ComplexMatrix behind = apply(ch, rho, x - dx).matrix();
  return (ahead - behind) / (2.0 * dx);
}

CptpReport cptp_check(const ParamChannel& ch, const std::vector<double>& x_probes) {
  CptpReport report;
  const ComplexMatrix eye = ComplexMatrix::Identity(ch.dim(), ch.dim());
  for (const double x : x_probes) {
    ComplexMatrix completeness = ComplexMatrix::Zero(ch.dim(), ch.dim());
    for (const auto& k : ch.kraus(x)) completeness.noalias() += k.adjoint() * k;
    const double deviation = linalg::max_abs_diff(completeness, eye);
    report.probes.push_back(x);
    report.deviations.push_back(deviation);
    report.max_deviation = std::max(report.max_deviation, deviation);
    if (!(deviation < kCptpTol)) report.passes = false;
  }
  return report;
}

double linearity_defect(const ParamChannel& ch, const ComplexMatrix& r1,
                        const ComplexMatrix& r2, double a, double x) {
  const ComplexMatrix lhs = apply_linear(ch, a * r1 + (1.0 - a) * r2, x);
  const ComplexMatrix rhs =
      a * apply_linear(ch, r1, x) + (1.0 - a) * apply_linear(ch, r2, x);
  return linalg::max_abs_diff(lhs, rhs);
}

ParamChannel build_channel(const ChannelSpec& spec) {
  const GeneratorSpec g = GeneratorSpec::make(spec.h, spec.sites);
  ParamChannel unitary = unitary_channel(g);
  if (spec.kind == "unitary") {
    if (spec.gamma != 0.0) {
      throw Error(ErrorCode::ConfigError, "gamma is only valid for unitary+depolarizing");
    }
    return unitary;
  }
  if (spec.kind == "unitary+depolarizing") return depolarizing_compose(unitary, spec.gamma);
  throw Error(ErrorCode::ConfigError, "unknown channel kind '" + spec.kind + "'");
}

}  // namespace channels
}  // namespace qsense
