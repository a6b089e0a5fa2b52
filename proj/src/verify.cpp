#include "qsense/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "qsense/error.hpp"
#include "qsense/io.hpp"
#include "qsense/linalg.hpp"

namespace qsense::verify {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64_next(std::uint64_t state) {
  std::uint64_t z = state + kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

DensityMatrix convex(const DensityMatrix& a, const DensityMatrix& b, double w) {
  return DensityMatrix(w * a.matrix() + (1.0 - w) * b.matrix());
}

void validate(const SuiteConfig& c, const std::vector<int>& dims) {
  const auto fail = [](const std::string& what) { throw Error(ErrorCode::ConfigError, what); };
  if (c.trials < 1) fail("trials must be >= 1");
  if (c.n < 1) fail("N must be >= 1");
  if (c.max_dim < 2 || c.max_dim > 16) fail("max_dim must lie in [2, 16]");
  if (dims.empty()) fail("no dimensions selected");
  for (const int d : dims) {
    if (d < 2) fail("dimensions must be >= 2");
    if (d > c.max_dim) {
      fail("dimension " + std::to_string(d) + " exceeds max_dim " + std::to_string(c.max_dim));
    }
  }
  if (c.suite == Suite::Theorem) {
    if (c.gammas.empty()) fail("no depolarizing strengths selected");
    for (const double g : c.gammas) {
      if (!(g >= 0.0 && g <= 1.0)) fail("gamma must lie in [0, 1]");
    }
    if (!(c.dx >= metrology::kMinFdStep && c.dx <= metrology::kMaxFdStep)) {
      fail("dx must lie in [1e-6, 1e-2]");
    }
  }
}

}  // namespace

std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64_next(master + index * kGolden);
}

double TheoremTrialResult::qfi_best_pure() const {
  return qfi_pure.empty() ? 0.0 : *std::max_element(qfi_pure.begin(), qfi_pure.end());
}

LemmaTrialResult check_lemma_once(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                  const DensityMatrix& sigma1, const DensityMatrix& sigma2,
                                  double a) {
  const Index dim = rho1.dim();
  if (rho2.dim() != dim || sigma1.dim() != dim || sigma2.dim() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "lemma quadruple dimensions differ");
  }
  if (!(a >= 0.0 && a <= 1.0)) throw Error(ErrorCode::ParameterOutOfRange, "a outside [0,1]");
  LemmaTrialResult r;
  r.a = a;
  r.dim = dim;
  r.lhs = metrology::bures_distance_sq(convex(rho1, rho2, a), convex(sigma1, sigma2, a));
  r.rhs = a * metrology::bures_distance_sq(rho1, sigma1) +
          (1.0 - a) * metrology::bures_distance_sq(rho2, sigma2);
  r.margin = r.rhs - r.lhs;
  return r;
}

TheoremTrialResult check_theorem_once(const Decomposition& d, const ParamChannel& ch, double x,
                                      int n, double dx) {
  if (ch.dim() != d.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "channel and decomposition dimensions differ");
  }
  TheoremTrialResult r;
  r.dim = d.dim();
  r.x = x;
  r.weights = d.weights();

  r.qfi_mixed = metrology::qfi_fd(ch, states::mix(d), x, dx);
  r.bures_mixed = r.qfi_mixed * dx * dx / 4.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double q = metrology::qfi_fd(ch, states::density_from_pure(d.states()[i]), x, dx);
    r.qfi_pure.push_back(q);
    r.bures_weighted += d.weights()[i] * q * dx * dx / 4.0;
  }
  r.chain_margin = r.bures_weighted - r.bures_mixed;
  r.chain_holds = r.chain_margin >= -kMarginTol;

  const double best = r.qfi_best_pure();
  r.holds = r.qfi_mixed <= best + kQfiTol;
  r.delta_x_mixed = metrology::delta_x_min(r.qfi_mixed, n).delta_x_min;
  r.delta_x_best_pure = metrology::delta_x_min(best, n).delta_x_min;
  return r;
}

LemmaTrialResult random_lemma_trial(Index dim, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<Index> rank_dist(1, dim);
  std::array<Index, 4> ranks{};
  for (auto& r : ranks) r = rank_dist(rng);
  const DensityMatrix rho1 = states::random_density(dim, ranks[0], rng);
  const DensityMatrix rho2 = states::random_density(dim, ranks[1], rng);
  const DensityMatrix sigma1 = states::random_density(dim, ranks[2], rng);
  const DensityMatrix sigma2 = states::random_density(dim, ranks[3], rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LemmaTrialResult r = check_lemma_once(rho1, rho2, sigma1, sigma2, unit(rng));
  r.seed = seed;
  r.ranks = ranks;
  return r;
}

ParamChannel phase_channel(Index dim, double gamma) {
  if (dim < 2) throw Error(ErrorCode::ParameterOutOfRange, "phase channel needs dim >= 2");
  GeneratorSpec g;
  if (is_power_of_two(dim)) {
    int sites = 0;
    for (Index d = dim; d > 1; d >>= 1) ++sites;
    g = GeneratorSpec::make(linalg::pauli_z() / 2.0, sites);
  } else {
    RealVector levels(dim);
    for (Index i = 0; i < dim; ++i) levels(i) = static_cast<double>(i) - 0.5 * (dim - 1);
    g = GeneratorSpec::make(levels.cast<Complex>().asDiagonal(), 1);
  }
  ParamChannel unitary = channels::unitary_channel(g);
  return gamma > 0.0 ? channels::depolarizing_compose(unitary, gamma) : unitary;
}

TheoremTrialResult random_theorem_trial(Index dim, double gamma, std::uint64_t seed, double dx,
                                        int n) {
  Rng rng(seed);
  std::uniform_int_distribution<Index> rank_dist(2, std::min<Index>(4, dim));
  const Index rank = rank_dist(rng);
  const DensityMatrix rho0 = states::random_density(dim, rank, rng);
  const Decomposition d = states::random_decomposition(rho0, 3, rng);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double x = angle(rng);
  TheoremTrialResult r = check_theorem_once(d, phase_channel(dim, gamma), x, n, dx);
  r.seed = seed;
  r.gamma = gamma;
  return r;
}

std::vector<ScalingRow> scaling_experiment(const ComplexMatrix& h, int k_max, int n, double dx) {
  if (k_max < 1) throw Error(ErrorCode::ParameterOutOfRange, "K_max must be >= 1");
  // Fail before doing any work rather than after the largest affordable K.
  Index total = 1;
  for (int k = 0; k < k_max; ++k) {
    total *= h.rows();
    if (total > static_cast<Index>(kDefaultDimCap)) {
      throw Error(ErrorCode::DimensionOverflow,
                  "d^K_max exceeds the dimension cap " + std::to_string(kDefaultDimCap));
    }
  }
  const PureState site = states::extremal_superposition(h);
  std::vector<ScalingRow> rows;
  for (int k = 1; k <= k_max; ++k) {
    const GeneratorSpec g = GeneratorSpec::make(h, k);
    const ParamChannel ch = channels::unitary_channel(g);
    const DensityMatrix product = states::density_from_pure(states::product_state(site, k));
    const DensityMatrix entangled =
        states::density_from_pure(states::extremal_entangled_state(h, k));

    ScalingRow row;
    row.sites = k;
    row.qfi_product = metrology::qfi_fd(ch, product, 0.0, dx);
    row.qfi_entangled = metrology::qfi_fd(ch, entangled, 0.0, dx);
    row.delta_product = metrology::delta_x_min(row.qfi_product, n).delta_x_min;
    row.delta_entangled = metrology::delta_x_min(row.qfi_entangled, n).delta_x_min;
    row.bound_product = metrology::bound_product(g, n);
    row.bound_entangled = metrology::bound_entangled(g, n);
    row.rel_dev_product = row.delta_product / row.bound_product - 1.0;
    row.rel_dev_entangled = row.delta_entangled / row.bound_entangled - 1.0;
    row.ratio = row.delta_entangled / row.delta_product;
    row.ratio_expected = 1.0 / std::sqrt(static_cast<double>(k));
    rows.push_back(row);
  }
  return rows;
}

WernerTable werner_experiment(int k, const std::vector<double>& q_grid, int n, double dx) {
  if (k < 1) throw Error(ErrorCode::ParameterOutOfRange, "K must be >= 1");
  const PureState ghz = states::ghz_state(k);
  const ComplexMatrix ghz_proj = ghz.amplitudes() * ghz.amplitudes().adjoint();
  const Index dim = ghz.dim();
  const ComplexMatrix mixed = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
  const ParamChannel ch =
      channels::unitary_channel(GeneratorSpec::make(linalg::pauli_z() / 2.0, k));

  WernerTable table;
  table.sites = k;
  for (const double q : q_grid) {
    if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorCode::ParameterOutOfRange, "q outside [0,1]");
    const DensityMatrix rho0(q * ghz_proj + (1.0 - q) * mixed);
    WernerRow row;
    row.q = q;
    row.qfi = metrology::qfi_fd(ch, rho0, 0.0, dx);
    row.qfi_sld = metrology::qfi_sld(channels::apply(ch, rho0, 0.0),
                                     channels::channel_derivative(ch, rho0, 0.0, dx));
    row.delta_x_min = metrology::delta_x_min(row.qfi, n).delta_x_min;
    table.rows.push_back(row);
  }

  std::vector<WernerRow> sorted = table.rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const WernerRow& a, const WernerRow& b) { return a.q < b.q; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].qfi < sorted[i - 1].qfi - 1e-9) table.monotone = false;
  }
  return table;
}

SuiteOutcome run_suite(const SuiteConfig& config) {
  const bool lemma = config.suite == Suite::Lemma;
  std::vector<int> dims = config.dims;
  if (dims.empty()) dims = lemma ? std::vector<int>{2, 4, 8} : std::vector<int>{4, 8};
  validate(config, dims);

  SuiteOutcome outcome;
  outcome.worst_margin = std::numeric_limits<double>::infinity();
  nlohmann::json results = nlohmann::json::array();
  std::ostringstream csv;

  if (lemma) {
    csv << "trial,seed,dim,lhs,rhs,margin\n";
  } else {
    csv << "trial,seed,dim,qfi_mixed,qfi_best_pure,holds\n";
  }

  const auto nd = dims.size();
  for (int i = 0; i < config.trials; ++i) {
    const auto index = static_cast<std::uint64_t>(i);
    const std::uint64_t seed = derive_trial_seed(config.seed, index);
    const int dim = dims[index % nd];
    if (lemma) {
      const LemmaTrialResult r = random_lemma_trial(dim, seed);
      const bool ok = config.invert ? r.margin <= kMarginTol : r.holds();
      if (!ok) ++outcome.violations;
      outcome.worst_margin = std::min(outcome.worst_margin, r.margin);
      results.push_back({{"trial", i},
                         {"seed", seed},
                         {"dim", dim},
                         {"ranks", r.ranks},
                         {"a", r.a},
                         {"lhs", r.lhs},
                         {"rhs", r.rhs},
                         {"margin", r.margin},
                         {"violation", !ok}});
      csv << i << ',' << seed << ',' << dim << ',' << fmt_double(r.lhs) << ','
          << fmt_double(r.rhs) << ',' << fmt_double(r.margin) << '\n';
    } else {
      const double gamma = config.gammas[(index / nd) % config.gammas.size()];
      const TheoremTrialResult r = random_theorem_trial(dim, gamma, seed, config.dx, config.n);
      const double best = r.qfi_best_pure();
      const bool ok = config.invert
                          ? (r.qfi_mixed >= best - kQfiTol &&
                             r.bures_mixed >= r.bures_weighted - kMarginTol)
                          : (r.holds && r.chain_holds);
      if (!ok) ++outcome.violations;
      outcome.worst_margin = std::min(outcome.worst_margin, best - r.qfi_mixed);
      results.push_back({{"trial", i},
                         {"seed", seed},
                         {"dim", dim},
                         {"gamma", gamma},
                         {"x", r.x},
                         {"weights", r.weights},
                         {"qfi_mixed", r.qfi_mixed},
                         {"qfi_pure", r.qfi_pure},
                         {"qfi_best_pure", best},
                         {"delta_x_mixed", finite_or_null(r.delta_x_mixed)},
                         {"delta_x_best_pure", finite_or_null(r.delta_x_best_pure)},
                         {"holds", r.holds},
                         {"bures_mixed", r.bures_mixed},
                         {"bures_weighted", r.bures_weighted},
                         {"chain_margin", r.chain_margin},
                         {"chain_holds", r.chain_holds},
                         {"violation", !ok}});
      csv << i << ',' << seed << ',' << dim << ',' << fmt_double(r.qfi_mixed) << ','
          << fmt_double(best) << ',' << (r.holds ? "true" : "false") << '\n';
    }
  }

  nlohmann::json report{
      {"suite", lemma ? "lemma" : "theorem"},
      {"master_seed", config.seed},
      {"trials", config.trials},
      {"dims", dims},
      {"self_test", config.invert},
      {"seed_derivation", kSeedDerivation},
      {"tolerances", {{"margin", kMarginTol}, {"qfi", kQfiTol}}},
  };
  if (!lemma) {
    report["gammas"] = config.gammas;
    report["dx"] = config.dx;
    report["n"] = config.n;
  }
  report["results"] = std::move(results);
  report["summary"] = {{"violations", outcome.violations},
                       {"worst_margin", outcome.worst_margin},
                       {"passed", outcome.violations == 0}};
  if (config.timestamp) report["generated_at"] = utc_timestamp();

  outcome.exit_code = outcome.violations == 0 ? 0 : 1;
  outcome.csv = csv.str();
  if (!config.json_path.empty()) io::write_text_file(config.json_path, report.dump(2) + "\n");
  if (!config.csv_path.empty()) io::write_text_file(config.csv_path, outcome.csv);
  outcome.report = std::move(report);
  return outcome;
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
  std::ostringstream out;
  out << "K,qfi_product,qfi_entangled,delta_product,delta_entangled,bound_product,"
         "bound_entangled,rel_dev_product,rel_dev_entangled,ratio,ratio_expected\n";
  for (const auto& r : rows) {
    out << r.sites << ',' << fmt_double(r.qfi_product) << ',' << fmt_double(r.qfi_entangled)
        << ',' << fmt_double(r.delta_product) << ',' << fmt_double(r.delta_entangled) << ','
        << fmt_double(r.bound_product) << ',' << fmt_double(r.bound_entangled) << ','
        << fmt_double(r.rel_dev_product) << ',' << fmt_double(r.rel_dev_entangled) << ','
        << fmt_double(r.ratio) << ',' << fmt_double(r.ratio_expected) << '\n';
  }
  return out.str();
}

std::string werner_csv(const WernerTable& table) {
  std::ostringstream out;
  out << "q,qfi,qfi_sld,delta_x_min\n";
  for (const auto& r : table.rows) {
    out << fmt_double(r.q) << ',' << fmt_double(r.qfi) << ',' << fmt_double(r.qfi_sld) << ','
        << fmt_double(r.delta_x_min) << '\n';
  }
  return out.str();
}

nlohmann::json scaling_json(const std::vector<ScalingRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"K", r.sites},
                   {"qfi_product", r.qfi_product},
                   {"qfi_entangled", r.qfi_entangled},
                   {"delta_product", r.delta_product},
                   {"delta_entangled", r.delta_entangled},
                   {"bound_product", r.bound_product},
                   {"bound_entangled", r.bound_entangled},
                   {"rel_dev_product", r.rel_dev_product},
                   {"rel_dev_entangled", r.rel_dev_entangled},
                   {"ratio", r.ratio},
                   {"ratio_expected", r.ratio_expected}});
  }
  return out;
}

nlohmann::json werner_json(const WernerTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"q", r.q},
                    {"qfi", r.qfi},
                    {"qfi_sld", r.qfi_sld},
                    {"delta_x_min", finite_or_null(r.delta_x_min)}});
  }
  return {{"K", table.sites}, {"monotone_in_q", table.monotone}, {"rows", std::move(rows)}};
}

}  // namespace qsense::verify
