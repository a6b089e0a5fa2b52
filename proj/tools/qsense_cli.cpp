// qsense command-line front end. Exit codes: 0 = all checks pass,
// 1 = a checked inequality or closed form was violated, 2 = config/IO error.

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsense/channels.hpp"
#include "qsense/error.hpp"
#include "qsense/io.hpp"
#include "qsense/metrology.hpp"
#include "qsense/verify.hpp"

namespace {

using qsense::io::Json;

constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;
constexpr double kScalingTol = 1e-4;

struct FidelityArgs {
  std::string rho;
  std::string sigma;
};

struct QfiArgs {
  std::string channel;
  std::string rho;
  double x = 0.0;
  double dx = qsense::ParamChannel::kDefaultStep;
  int n = 1;
};

struct SuiteArgs {
  int trials = 100;
  std::uint64_t seed = 0;
  std::vector<int> dims;
  std::vector<double> gammas{0.0, 0.1, 0.3};
  std::string out;
  std::string csv;
  int max_dim = 8;
  bool self_test = false;
  bool no_timestamp = false;
};

struct ScalingArgs {
  std::string h;
  int kmax = 6;
  int n = 1;
  double dx = qsense::ParamChannel::kDefaultStep;
  std::string csv;
};

struct WernerArgs {
  int k = 2;
  std::vector<double> q_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  int n = 1;
  double dx = qsense::ParamChannel::kDefaultStep;
  std::string csv;
};

qsense::DensityMatrix load_density(const std::string& path) {
  return qsense::DensityMatrix(qsense::io::matrix_from_json(qsense::io::read_json_file(path)));
}

int run_fidelity(const FidelityArgs& args) {
  const auto rho = load_density(args.rho);
  const auto sigma = load_density(args.sigma);
  const Json out{{"fidelity", qsense::metrology::fidelity(rho, sigma)},
                 {"bures_distance_sq", qsense::metrology::bures_distance_sq(rho, sigma)}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_qfi(const QfiArgs& args) {
  namespace ch = qsense::channels;
  namespace met = qsense::metrology;
  const auto spec = qsense::io::channel_spec_from_json(qsense::io::read_json_file(args.channel));
  const auto channel = ch::build_channel(spec);
  const auto rho0 = load_density(args.rho);
  const double sld = met::qfi_sld(ch::apply(channel, rho0, args.x),
                                  ch::channel_derivative(channel, rho0, args.x, args.dx));
  const double fd = met::qfi_fd(channel, rho0, args.x, args.dx);
  const Json out{{"x", args.x},
                 {"dx", args.dx},
                 {"sld", qsense::io::sensitivity_to_json(met::delta_x_min(sld, args.n))},
                 {"fd", qsense::io::sensitivity_to_json(met::delta_x_min(fd, args.n))}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_suite(const SuiteArgs& args, qsense::verify::Suite suite) {
  qsense::verify::SuiteConfig config;
  config.suite = suite;
  config.trials = args.trials;
  config.seed = args.seed;
  config.dims = args.dims;
  config.gammas = args.gammas;
  config.max_dim = args.max_dim;
  config.invert = args.self_test;
  config.timestamp = !args.no_timestamp;
  config.json_path = args.out;
  config.csv_path = args.csv;
  const auto outcome = qsense::verify::run_suite(config);
  Json summary = outcome.report.at("summary");
  summary["suite"] = outcome.report.at("suite");
  summary["trials"] = args.trials;
  summary["master_seed"] = args.seed;
  std::cout << summary.dump(2) << '\n';
  return outcome.exit_code;
}

int run_scaling(const ScalingArgs& args) {
  const auto h = qsense::io::matrix_from_json(qsense::io::read_json_file(args.h));
  const auto rows = qsense::verify::scaling_experiment(h, args.kmax, args.n, args.dx);
  if (!args.csv.empty()) qsense::io::write_text_file(args.csv, qsense::verify::scaling_csv(rows));
  std::cout << qsense::verify::scaling_json(rows).dump(2) << '\n';
  for (const auto& r : rows) {
    if (std::abs(r.rel_dev_product) > kScalingTol || std::abs(r.rel_dev_entangled) > kScalingTol ||
        std::abs(r.ratio - r.ratio_expected) > kScalingTol) {
      return kExitViolation;
    }
  }
  return 0;
}

int run_werner(const WernerArgs& args) {
  const auto table = qsense::verify::werner_experiment(args.k, args.q_grid, args.n, args.dx);
  if (!args.csv.empty()) qsense::io::write_text_file(args.csv, qsense::verify::werner_csv(table));
  std::cout << qsense::verify::werner_json(table).dump(2) << '\n';
  return 0;
}

void add_suite_options(CLI::App* cmd, SuiteArgs& args, bool with_gamma) {
  cmd->add_option("--trials", args.trials, "Number of random trials")->required();
  cmd->add_option("--seed", args.seed, "Master seed")->required();
  cmd->add_option("--dims", args.dims, "Comma-separated Hilbert-space dimensions")
      ->delimiter(',');
  if (with_gamma) {
    cmd->add_option("--gamma", args.gammas, "Comma-separated depolarizing strengths")
        ->delimiter(',');
  }
  cmd->add_option("--out", args.out, "Per-trial JSON report");
  cmd->add_option("--csv", args.csv, "CSV summary");
  cmd->add_option("--max-dim", args.max_dim, "Largest dimension accepted (8 or up to 16)");
  cmd->add_flag("--self-test", args.self_test, "Check the reversed inequality (must fail)");
  cmd->add_flag("--no-timestamp", args.no_timestamp, "Omit generated_at from the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum sensitivity bounds for mixed states"};
  app.require_subcommand(1);

  FidelityArgs fidelity_args;
  auto* fidelity = app.add_subcommand("fidelity", "Fidelity and squared Bures distance");
  fidelity->add_option("--rho", fidelity_args.rho, "Density matrix JSON")->required();
  fidelity->add_option("--sigma", fidelity_args.sigma, "Density matrix JSON")->required();

  QfiArgs qfi_args;
  auto* qfi = app.add_subcommand("qfi", "Quantum Fisher information and delta_x_min");
  qfi->add_option("--channel", qfi_args.channel, "Channel spec JSON")->required();
  qfi->add_option("--rho", qfi_args.rho, "Initial density matrix JSON")->required();
  qfi->add_option("--x", qfi_args.x, "Parameter value")->required();
  qfi->add_option("--dx", qfi_args.dx, "Finite-difference step");
  qfi->add_option("--n", qfi_args.n, "Repetitions N");

  SuiteArgs lemma_args;
  lemma_args.dims = {2, 4, 8};
  auto* lemma = app.add_subcommand("verify-lemma", "Fuzz joint convexity of Bures^2");
  add_suite_options(lemma, lemma_args, false);

  SuiteArgs theorem_args;
  theorem_args.dims = {4, 8};
  auto* theorem = app.add_subcommand("verify-theorem", "Fuzz the mixed-state sensitivity bound");
  add_suite_options(theorem, theorem_args, true);

  ScalingArgs scaling_args;
  auto* scaling = app.add_subcommand("scaling", "Product vs entangled sensitivity scaling");
  scaling->set_help_flag("--help", "Print this help message and exit");  // -h is taken by --h
  scaling->add_option("--h", scaling_args.h, "Single-site generator matrix JSON")->required();
  scaling->add_option("--kmax", scaling_args.kmax, "Largest subsystem count")->required();
  scaling->add_option("--n", scaling_args.n, "Repetitions N")->required();
  scaling->add_option("--dx", scaling_args.dx, "Finite-difference step");
  scaling->add_option("--csv", scaling_args.csv, "CSV output");

  WernerArgs werner_args;
  auto* werner = app.add_subcommand("werner", "GHZ state admixed with white noise");
  werner->add_option("--k", werner_args.k, "Number of qubits")->required();
  werner->add_option("--q-grid", werner_args.q_grid, "Comma-separated GHZ weights")
      ->delimiter(',');
  werner->add_option("--n", werner_args.n, "Repetitions N");
  werner->add_option("--dx", werner_args.dx, "Finite-difference step");
  werner->add_option("--csv", werner_args.csv, "CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*fidelity) return run_fidelity(fidelity_args);
    if (*qfi) return run_qfi(qfi_args);
    if (*lemma) return run_suite(lemma_args, qsense::verify::Suite::Lemma);
    if (*theorem) return run_suite(theorem_args, qsense::verify::Suite::Theorem);
    if (*scaling) return run_scaling(scaling_args);
    if (*werner) return run_werner(werner_args);
  } catch (const qsense::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
