#include <doctest.h>

#include <cmath>
#include <numeric>

#include "qsense/error.hpp"
#include "qsense/linalg.hpp"
#include "qsense/states.hpp"
#include "test_helpers.hpp"

using namespace qsense;
using namespace qsense::testing;
namespace st = qsense::states;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected qsense::Error");
  return ErrorCode::ConfigError;
}

PureState plus() { return PureState(ket({kInvSqrt2, kInvSqrt2})); }
PureState minus() { return PureState(ket({kInvSqrt2, -kInvSqrt2})); }

}  // namespace

TEST_SUITE("states") {

TEST_CASE("PureState validation") {
  CHECK_NOTHROW(PureState(ket({1.0, 0.0})));
  CHECK(code_of([] { PureState(ket({1.0, 1.0})); }) == ErrorCode::NotNormalized);
  CHECK(code_of([] { PureState::normalized(ket({0.0, 0.0})); }) == ErrorCode::NotNormalized);
}

TEST_CASE("DensityMatrix validation") {
  CHECK(code_of([] { DensityMatrix(diag({0.5, 0.6})); }) == ErrorCode::NotTraceOne);
  CHECK(code_of([] { DensityMatrix(diag({1.5, -0.5})); }) == ErrorCode::NotPSD);
  ComplexMatrix skew = diag({0.5, 0.5});
  skew(0, 1) = 0.1;
  CHECK(code_of([&] { DensityMatrix{skew}; }) == ErrorCode::NotHermitian);
  const DensityMatrix clamped(diag({1.0 + 5e-11, -5e-11}));
  CHECK(clamped.matrix()(1, 1).real() == 0.0);
  CHECK(clamped.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("density_from_pure: examples") {
  CHECK(max_abs(st::density_from_pure(PureState::basis(2, 0)).matrix() - diag({1, 0})) == 0.0);
  ComplexMatrix half = ComplexMatrix::Constant(2, 2, 0.5);
  CHECK(max_abs(st::density_from_pure(plus()).matrix() - half) < 1e-15);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix p = st::density_from_pure(st::random_pure(5, seed)).matrix();
    CHECK(max_abs(p * p - p) < 1e-10);
  }
}

TEST_CASE("mix: examples") {
  CHECK(max_abs(st::mix(Decomposition({1.0}, {PureState::basis(2, 0)})).matrix() -
                diag({1, 0})) == 0.0);
  const ComplexMatrix half_eye = ComplexMatrix::Identity(2, 2) / 2.0;
  CHECK(max_abs(st::mix(Decomposition({0.5, 0.5}, {PureState::basis(2, 0),
                                                   PureState::basis(2, 1)}))
                    .matrix() -
                half_eye) < 1e-15);
  CHECK(max_abs(st::mix(Decomposition({0.5, 0.5}, {plus(), minus()})).matrix() - half_eye) <
        1e-15);
}

TEST_CASE("Decomposition invariants") {
  CHECK(code_of([] { Decomposition({0.5, 0.4}, {plus(), minus()}); }) ==
        ErrorCode::WeightMismatch);
  CHECK(code_of([] { Decomposition({1.2, -0.2}, {plus(), minus()}); }) ==
        ErrorCode::WeightMismatch);
  CHECK(code_of([] { Decomposition({0.5, 0.5}, {plus(), PureState::basis(3, 0)}); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([] { Decomposition({}, {}); }) == ErrorCode::WeightMismatch);
}

TEST_CASE("product_state: examples") {
  const PureState zeros = st::product_state(PureState::basis(2, 0), 3);
  CHECK(zeros.dim() == 8);
  CHECK(max_abs(zeros.amplitudes() - PureState::basis(8, 0).amplitudes()) == 0.0);
  const PureState pp = st::product_state(plus(), 2);
  CHECK(max_abs(pp.amplitudes() - ComplexVector::Constant(4, 0.5)) < 1e-15);
  const PureState once = st::product_state(plus(), 1);
  CHECK(max_abs(once.amplitudes() - plus().amplitudes()) == 0.0);
  CHECK(code_of([] { st::product_state(PureState::basis(2, 0), 13); }) ==
        ErrorCode::DimensionOverflow);
}

TEST_CASE("product_state: Schmidt rank one across every cut") {
  for (int k = 2; k <= 4; ++k) {
    const PureState phi = st::random_pure(2, 100 + static_cast<std::uint64_t>(k));
    const PureState psi = st::product_state(phi, k);
    for (int left = 1; left < k; ++left) {
      const Index dl = Index{1} << left;
      const ComplexMatrix reduced = st::reduced_state(psi, dl, psi.dim() / dl);
      CHECK(st::purity(reduced) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("extremal_entangled_state: examples") {
  const ComplexMatrix sz2 = linalg::pauli_z() / 2.0;
  const PureState bell = st::extremal_entangled_state(sz2, 2);
  CHECK(max_abs(bell.amplitudes() - ket({kInvSqrt2, 0, 0, kInvSqrt2})) < 1e-15);
  const PureState single = st::extremal_entangled_state(sz2, 1);
  CHECK(max_abs(single.amplitudes() - plus().amplitudes()) < 1e-15);

  // sigma_x/2: rotate |++> + |--> back to the computational basis.
  const PureState x_state = st::extremal_entangled_state(linalg::pauli_x() / 2.0, 2);
  ComplexMatrix hadamard(2, 2);
  hadamard << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  const ComplexMatrix hh = linalg::tensor(hadamard, hadamard);
  CHECK(max_abs(hh * x_state.amplitudes() - ket({kInvSqrt2, 0, 0, kInvSqrt2})) < 1e-14);

  CHECK(code_of([] { st::extremal_entangled_state(ComplexMatrix::Identity(2, 2), 2); }) ==
        ErrorCode::DegenerateSpectrum);
}

TEST_CASE("extremal_entangled_state: maximally mixed single site") {
  Rng rng(21);
  for (int k = 2; k <= 5; ++k) {
    const ComplexMatrix h = st::random_hermitian(2, rng);
    const PureState psi = st::extremal_entangled_state(h, k);
    const ComplexMatrix site = st::reduced_state(psi, 2, psi.dim() / 2);
    const RealVector ev = linalg::eigh(site).eigenvalues;
    CHECK(std::abs(ev(0) - 0.5) < 1e-10);
    CHECK(std::abs(ev(1) - 0.5) < 1e-10);
  }
}

TEST_CASE("random_pure: determinism and Haar moment") {
  const PureState one = st::random_pure(1, 5);
  CHECK(std::abs(std::abs(one.amplitudes()(0)) - 1.0) < 1e-15);
  CHECK(max_abs(st::random_pure(6, 99).amplitudes() - st::random_pure(6, 99).amplitudes()) ==
        0.0);
  CHECK(max_abs(st::random_pure(6, 99).amplitudes() - st::random_pure(6, 98).amplitudes()) >
        0.0);

  Rng rng(2024);
  double mean = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) mean += std::norm(st::random_pure(4, rng).amplitudes()(0));
  mean /= draws;
  CHECK(std::abs(mean - 0.25) < 0.02);
}

TEST_CASE("random_density: rank, purity and trace") {
  CHECK(max_abs(st::random_density(1, 1, 3).matrix() - ComplexMatrix::Ones(1, 1)) == 0.0);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ComplexMatrix p = st::random_density(5, 1, seed).matrix();
    CHECK(max_abs(p * p - p) < 1e-10);
  }
  Rng rng(4);
  for (const Index rank : {1, 2, 3}) {
    const RealVector ev = linalg::eigh(st::random_density(6, rank, rng).matrix()).eigenvalues;
    int nonzero = 0;
    for (Index i = 0; i < ev.size(); ++i) nonzero += ev(i) > 1e-10 ? 1 : 0;
    CHECK(nonzero == rank);
  }
  double mean_eig = 0.0;
  for (int i = 0; i < 1000; ++i) {
    mean_eig += linalg::eigh(st::random_density(4, 4, rng).matrix()).eigenvalues.mean();
  }
  CHECK(mean_eig / 1000.0 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(code_of([] { st::random_density(3, 4, 1); }) == ErrorCode::ParameterOutOfRange);
}

TEST_CASE("random_unitary: Haar sampler is unitary and seeded") {
  const ComplexMatrix u = st::random_unitary(7, 12);
  CHECK(max_abs(u.adjoint() * u - ComplexMatrix::Identity(7, 7)) < 1e-12);
  CHECK(max_abs(u - st::random_unitary(7, 12)) == 0.0);
}

TEST_CASE("eigen_decomposition: examples and round trip") {
  const Decomposition half = st::eigen_decomposition(DensityMatrix::maximally_mixed(2));
  REQUIRE(half.size() == 2);
  CHECK(half.weights()[0] == doctest::Approx(0.5));
  CHECK(half.weights()[1] == doctest::Approx(0.5));

  const Decomposition pure = st::eigen_decomposition(st::density_from_pure(plus()));
  REQUIRE(pure.size() == 1);
  CHECK(pure.weights()[0] == doctest::Approx(1.0));
  CHECK(std::abs(std::abs(pure.states()[0].amplitudes().dot(plus().amplitudes())) - 1.0) <
        1e-12);

  Rng rng(31);
  for (const Index dim : {2, 3, 8, 16, 32}) {
    const DensityMatrix rho = st::random_density(dim, 1 + dim / 2, rng);
    CHECK(max_abs(st::mix(st::eigen_decomposition(rho)).matrix() - rho.matrix()) < 1e-9);
  }
}

TEST_CASE("unitary_mixed_decomposition: examples") {
  const Decomposition basis({0.5, 0.5}, {PureState::basis(2, 0), PureState::basis(2, 1)});

  const Decomposition same = st::unitary_mixed_decomposition(basis, ComplexMatrix::Identity(2, 2), 2);
  REQUIRE(same.size() == 2);
  CHECK(max_abs(same.states()[1].amplitudes() - basis.states()[1].amplitudes()) == 0.0);

  // sqrt(q_j)|phi_j> = sum_i H_ji sqrt(1/2)|i>  =>  q = 1/2, phi = |+>, |->.
  ComplexMatrix hadamard(2, 2);
  hadamard << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  const Decomposition pm = st::unitary_mixed_decomposition(basis, hadamard, 2);
  REQUIRE(pm.size() == 2);
  CHECK(pm.weights()[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pm.weights()[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(max_abs(pm.states()[0].amplitudes() - plus().amplitudes()) < 1e-15);
  CHECK(max_abs(pm.states()[1].amplitudes() - minus().amplitudes()) < 1e-15);
}

TEST_CASE("unitary_mixed_decomposition: preserves the mixture") {
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const Index dim = 2 + trial % 7;
    const Index rank = 1 + trial % dim;
    const DensityMatrix rho = st::random_density(dim, rank, rng);
    const Decomposition d = st::eigen_decomposition(rho);
    const Index m = static_cast<Index>(d.size()) + trial % 4;
    const ComplexMatrix v = qr_unitary(m, rng);
    const Decomposition mixed = st::unitary_mixed_decomposition(d, v, m);
    CHECK(max_abs(st::mix(mixed).matrix() - rho.matrix()) < 1e-9);
    // isometry form: only the first r columns
    const Decomposition iso =
        st::unitary_mixed_decomposition(d, v.leftCols(static_cast<Index>(d.size())), m);
    CHECK(max_abs(st::mix(iso).matrix() - rho.matrix()) < 1e-9);
  }
}

TEST_CASE("unitary_mixed_decomposition: drops zero-weight terms and rejects non-isometries") {
  const Decomposition one({1.0}, {PureState::basis(2, 0)});
  ComplexMatrix v = ComplexMatrix::Identity(3, 3);
  CHECK(st::unitary_mixed_decomposition(one, v, 3).size() == 1);
  v(0, 0) = 2.0;
  CHECK(code_of([&] { st::unitary_mixed_decomposition(one, v, 3); }) == ErrorCode::NotIsometry);
  const Decomposition two({0.5, 0.5}, {PureState::basis(2, 0), PureState::basis(2, 1)});
  CHECK(code_of([&] { st::unitary_mixed_decomposition(two, ComplexMatrix::Identity(1, 1), 1); }) ==
        ErrorCode::NotIsometry);
}

TEST_CASE("random_decomposition: term count range") {
  Rng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const DensityMatrix rho = st::random_density(8, 3, rng);
    const Decomposition d = st::random_decomposition(rho, 3, rng);
    CHECK(d.size() >= 1);
    CHECK(d.size() <= 6);
    CHECK(max_abs(st::mix(d).matrix() - rho.matrix()) < 1e-9);
  }
}

}  // TEST_SUITE
