#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/stl.h>

#include "qsense/channels.hpp"
#include "qsense/error.hpp"
#include "qsense/linalg.hpp"
#include "qsense/metrology.hpp"
#include "qsense/states.hpp"
#include "qsense/verify.hpp"

namespace py = pybind11;
using namespace qsense;

namespace {

ComplexMatrix as_matrix(const PureState& psi) { return psi.amplitudes(); }

py::dict sensitivity_dict(const SensitivityReport& r) {
  py::dict d;
  d["qfi"] = r.qfi;
  d["n_repetitions"] = r.n_repetitions;
  d["delta_x_min"] = r.delta_x_min;
  return d;
}

}  // namespace

PYBIND11_MODULE(_qsense, m) {
  m.doc() = "Quantum sensitivity bounds for pure and mixed states";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  // linalg
  m.def("trace_norm", &linalg::trace_norm, py::arg("m"));
  m.def("sqrt_psd", &linalg::sqrt_psd, py::arg("m"));
  m.def("expm_i_hermitian", &linalg::expm_i_hermitian, py::arg("h"), py::arg("t"));
  m.def(
      "eigh",
      [](const ComplexMatrix& mat) {
        const auto es = linalg::eigh(mat);
        return py::make_tuple(es.eigenvalues, es.eigenvectors);
      },
      py::arg("m"), "Ascending eigenvalues and phase-fixed orthonormal eigenvectors.");

  // states
  m.def(
      "random_pure", [](Index dim, std::uint64_t seed) { return as_matrix(states::random_pure(dim, seed)); },
      py::arg("dim"), py::arg("seed"));
  m.def(
      "random_density",
      [](Index dim, Index rank, std::uint64_t seed) {
        return states::random_density(dim, rank, seed).matrix();
      },
      py::arg("dim"), py::arg("rank"), py::arg("seed"));
  m.def(
      "ghz_state", [](int k) { return as_matrix(states::ghz_state(k)); }, py::arg("k"));
  m.def(
      "extremal_entangled_state",
      [](const ComplexMatrix& h, int k) { return as_matrix(states::extremal_entangled_state(h, k)); },
      py::arg("h"), py::arg("k"));
  m.def(
      "product_state",
      [](const ComplexVector& phi, int k) {
        return as_matrix(states::product_state(PureState::normalized(phi), k));
      },
      py::arg("phi"), py::arg("k"));
  m.def(
      "mix",
      [](const std::vector<double>& weights, const std::vector<ComplexVector>& members) {
        std::vector<PureState> psis;
        for (const auto& v : members) psis.emplace_back(v);
        return states::mix(Decomposition(weights, std::move(psis))).matrix();
      },
      py::arg("weights"), py::arg("states"));

  // channels
  py::class_<ParamChannel>(m, "Channel")
      .def_static(
          "unitary",
          [](const ComplexMatrix& h, int k) {
            return channels::unitary_channel(GeneratorSpec::make(h, k));
          },
          py::arg("h"), py::arg("k") = 1, "exp(-i x sum_i h_i) on k sites.")
      .def("depolarized", &channels::depolarizing_compose, py::arg("gamma"))
      .def_property_readonly("dim", &ParamChannel::dim)
      .def("kraus", &ParamChannel::kraus, py::arg("x"))
      .def(
          "apply",
          [](const ParamChannel& ch, const ComplexMatrix& rho, double x) {
            return channels::apply(ch, DensityMatrix(rho), x).matrix();
          },
          py::arg("rho"), py::arg("x"))
      .def(
          "derivative",
          [](const ParamChannel& ch, const ComplexMatrix& rho, double x, double dx) {
            return channels::channel_derivative(ch, DensityMatrix(rho), x, dx);
          },
          py::arg("rho"), py::arg("x"), py::arg("dx") = ParamChannel::kDefaultStep);

  // metrology
  m.def(
      "fidelity",
      [](const ComplexMatrix& rho, const ComplexMatrix& sigma) {
        return metrology::fidelity(DensityMatrix(rho), DensityMatrix(sigma));
      },
      py::arg("rho"), py::arg("sigma"));
  m.def(
      "bures_distance_sq",
      [](const ComplexMatrix& rho, const ComplexMatrix& sigma) {
        return metrology::bures_distance_sq(DensityMatrix(rho), DensityMatrix(sigma));
      },
      py::arg("rho"), py::arg("sigma"));
  m.def(
      "qfi_sld",
      [](const ComplexMatrix& rho, const ComplexMatrix& drho) {
        return metrology::qfi_sld(DensityMatrix(rho), drho);
      },
      py::arg("rho"), py::arg("drho"));
  m.def(
      "qfi_fd",
      [](const ParamChannel& ch, const ComplexMatrix& rho0, double x, double dx) {
        return metrology::qfi_fd(ch, DensityMatrix(rho0), x, dx);
      },
      py::arg("channel"), py::arg("rho0"), py::arg("x"),
      py::arg("dx") = ParamChannel::kDefaultStep);
  m.def(
      "delta_x_min", [](double qfi, int n) { return sensitivity_dict(metrology::delta_x_min(qfi, n)); },
      py::arg("qfi"), py::arg("n") = 1);
  m.def(
      "bound_product",
      [](const ComplexMatrix& h, int k, int n) {
        return metrology::bound_product(GeneratorSpec::make(h, k), n);
      },
      py::arg("h"), py::arg("k"), py::arg("n") = 1);
  m.def(
      "bound_entangled",
      [](const ComplexMatrix& h, int k, int n) {
        return metrology::bound_entangled(GeneratorSpec::make(h, k), n);
      },
      py::arg("h"), py::arg("k"), py::arg("n") = 1);

  // verify; structured results cross the boundary as JSON text.
  m.def(
      "check_lemma_once",
      [](const ComplexMatrix& r1, const ComplexMatrix& r2, const ComplexMatrix& s1,
         const ComplexMatrix& s2, double a) {
        const auto r = verify::check_lemma_once(DensityMatrix(r1), DensityMatrix(r2),
                                                DensityMatrix(s1), DensityMatrix(s2), a);
        return py::make_tuple(r.lhs, r.rhs, r.margin);
      },
      py::arg("rho1"), py::arg("rho2"), py::arg("sigma1"), py::arg("sigma2"), py::arg("a"));
  m.def(
      "_scaling_json",
      [](const ComplexMatrix& h, int k_max, int n, double dx) {
        return verify::scaling_json(verify::scaling_experiment(h, k_max, n, dx)).dump();
      },
      py::arg("h"), py::arg("k_max"), py::arg("n") = 1, py::arg("dx") = ParamChannel::kDefaultStep);
  m.def(
      "_werner_json",
      [](int k, const std::vector<double>& q_grid, int n, double dx) {
        return verify::werner_json(verify::werner_experiment(k, q_grid, n, dx)).dump();
      },
      py::arg("k"), py::arg("q_grid"), py::arg("n") = 1, py::arg("dx") = ParamChannel::kDefaultStep);
  m.def(
      "_run_suite_json",
      [](const std::string& suite, int trials, std::uint64_t seed, const std::vector<int>& dims,
         const std::vector<double>& gammas, bool invert) {
        verify::SuiteConfig config;
        if (suite == "lemma") {
          config.suite = verify::Suite::Lemma;
        } else if (suite == "theorem") {
          config.suite = verify::Suite::Theorem;
        } else {
          throw Error(ErrorCode::ConfigError, "suite must be 'lemma' or 'theorem'");
        }
        config.trials = trials;
        config.seed = seed;
        config.dims = dims;
        if (!gammas.empty()) config.gammas = gammas;
        config.invert = invert;
        config.timestamp = false;
        verify::SuiteOutcome outcome;
        {
          py::gil_scoped_release release;
          outcome = verify::run_suite(config);
        }
        return py::make_tuple(outcome.exit_code, outcome.report.dump());
      },
      py::arg("suite"), py::arg("trials"), py::arg("seed"), py::arg("dims") = std::vector<int>{},
      py::arg("gammas") = std::vector<double>{}, py::arg("invert") = false);
}
