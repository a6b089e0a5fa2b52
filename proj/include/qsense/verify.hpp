#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsense/channels.hpp"
#include "qsense/metrology.hpp"
#include "qsense/states.hpp"

/// Randomized checks of joint convexity of the squared Bures distance and of
/// the mixed-state sensitivity bound, plus the scaling and admixture
/// experiments.
namespace qsense::verify {

/// Metric inequalities may dip below zero by this much.
inline constexpr double kMarginTol = 1e-10;
/// Slack (absolute, in units of x^-2) for qfi_mixed <= max qfi_pure.
inline constexpr double kQfiTol = 1e-8;

inline constexpr const char* kSeedDerivation =
    "seed_i = splitmix64_next(state = master + i * 0x9E3779B97F4A7C15), "
    "i.e. the (i+1)-th output of a splitmix64 stream seeded with master";

/// Trial seed for (master, index); any trial can be replayed in isolation.
std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t index);

struct LemmaTrialResult {
  double lhs = 0.0;     ///< d^2(a r1 + (1-a) r2, a s1 + (1-a) s2)
  double rhs = 0.0;     ///< a d^2(r1, s1) + (1-a) d^2(r2, s2)
  double margin = 0.0;  ///< rhs - lhs
  double a = 0.0;
  std::uint64_t seed = 0;
  Index dim = 0;
  std::array<Index, 4> ranks{};

  bool holds() const { return margin >= -kMarginTol; }
};

struct TheoremTrialResult {
  double qfi_mixed = 0.0;
  std::vector<double> qfi_pure;
  std::vector<double> weights;
  double delta_x_mixed = 0.0;
  double delta_x_best_pure = 0.0;
  bool holds = false;
  /// d^2 between propagated mixtures at x and x + dx, and the weighted
  /// average of the same quantity over the members.
  double bures_mixed = 0.0;
  double bures_weighted = 0.0;
  double chain_margin = 0.0;
  bool chain_holds = false;
  std::uint64_t seed = 0;
  Index dim = 0;
  double gamma = 0.0;
  double x = 0.0;

  double qfi_best_pure() const;
};

LemmaTrialResult check_lemma_once(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                  const DensityMatrix& sigma1, const DensityMatrix& sigma2,
                                  double a);

TheoremTrialResult check_theorem_once(const Decomposition& d, const ParamChannel& ch, double x,
                                      int n = 1, double dx = ParamChannel::kDefaultStep);

/// Random quadruple with independent ranks in 1..dim and a ~ U[0,1].
LemmaTrialResult random_lemma_trial(Index dim, std::uint64_t seed);

/// Phase channel on dim (qubits when dim is a power of two, one qudit
/// otherwise) followed by depolarization gamma.
ParamChannel phase_channel(Index dim, double gamma);

/// Random rho0 of rank 2..4, decomposed by unitary mixing into up to rank+3
/// members, x ~ U[0, 2 pi).
TheoremTrialResult random_theorem_trial(Index dim, double gamma, std::uint64_t seed,
                                        double dx = ParamChannel::kDefaultStep, int n = 1);

struct ScalingRow {
  int sites = 0;
  double qfi_product = 0.0;
  double qfi_entangled = 0.0;
  double delta_product = 0.0;
  double delta_entangled = 0.0;
  double bound_product = 0.0;
  double bound_entangled = 0.0;
  double rel_dev_product = 0.0;    ///< measured / closed form - 1
  double rel_dev_entangled = 0.0;
  double ratio = 0.0;              ///< delta_entangled / delta_product
  double ratio_expected = 0.0;     ///< 1 / sqrt(K)
};

std::vector<ScalingRow> scaling_experiment(const ComplexMatrix& h, int k_max, int n,
                                           double dx = ParamChannel::kDefaultStep);

struct WernerRow {
  double q = 0.0;
  double qfi = 0.0;       ///< finite-difference Bures curvature
  double qfi_sld = 0.0;   ///< SLD form on the central-difference derivative
  double delta_x_min = 0.0;
};

struct WernerTable {
  int sites = 0;
  std::vector<WernerRow> rows;
  /// qfi non-increasing as q decreases. Recorded only.
  bool monotone = true;
};

WernerTable werner_experiment(int k, const std::vector<double>& q_grid, int n = 1,
                              double dx = ParamChannel::kDefaultStep);

enum class Suite { Lemma, Theorem };

struct SuiteConfig {
  Suite suite = Suite::Lemma;
  int trials = 100;
  std::uint64_t seed = 0;
  std::vector<int> dims;  ///< empty selects {2,4,8} (lemma) or {4,8} (theorem)
  std::vector<double> gammas{0.0, 0.1, 0.3};
  double dx = ParamChannel::kDefaultStep;
  int n = 1;
  int max_dim = 8;  ///< raise to 16 to fuzz larger systems
  /// Harness self-test: check the reversed inequality, so every generic trial
  /// must be flagged.
  bool invert = false;
  bool timestamp = true;
  std::string json_path;
  std::string csv_path;
};

struct SuiteOutcome {
  int exit_code = 0;
  int violations = 0;
  double worst_margin = 0.0;
  nlohmann::json report;
  std::string csv;
};

/// Runs the configured fuzzer, writes the requested report files and
/// returns exit code 0 iff no trial violated its inequality.
SuiteOutcome run_suite(const SuiteConfig& config);

std::string scaling_csv(const std::vector<ScalingRow>& rows);
std::string werner_csv(const WernerTable& table);
nlohmann::json scaling_json(const std::vector<ScalingRow>& rows);
nlohmann::json werner_json(const WernerTable& table);

}  // namespace qsense::verify
