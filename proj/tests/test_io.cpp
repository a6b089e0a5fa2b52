#include <doctest.h>

#include <cmath>

#include "qsense/error.hpp"
#include "qsense/io.hpp"
#include "qsense/linalg.hpp"
#include "test_helpers.hpp"

using namespace qsense;
using namespace qsense::testing;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected qsense::Error");
  return ErrorCode::ConfigError;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("matrix JSON layout") {
  ComplexMatrix m(2, 2);
  m << Complex(1, 2), 3, Complex(0, -4), 5;
  const io::Json j = io::matrix_to_json(m);
  CHECK(j.at("dim") == 2);
  CHECK(j.at("re")[0][1] == 3.0);
  CHECK(j.at("im")[1][0] == -4.0);
}

TEST_CASE("matrix and decomposition round trips are exact through text") {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const Index n = 1 + i % 6;
    const ComplexMatrix m = random_matrix(n, rng) * std::pow(10.0, i - 10);
    const auto text = io::matrix_to_json(m).dump();
    CHECK(io::matrix_from_json(io::Json::parse(text)) == m);

    const DensityMatrix rho = states::random_density(n, 1 + i % n, rng);
    const Decomposition d = states::eigen_decomposition(rho);
    const Decomposition back =
        io::decomposition_from_json(io::Json::parse(io::decomposition_to_json(d).dump()));
    CHECK(back.weights() == d.weights());
    for (std::size_t t = 0; t < d.size(); ++t) {
      CHECK(back.states()[t].amplitudes() == d.states()[t].amplitudes());
    }
  }
}

TEST_CASE("malformed matrices are parse errors") {
  CHECK(code_of([] { io::matrix_from_json(io::Json::parse(R"({"dim":2,"re":[[1,0]],"im":[[0,0]]})")); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { io::matrix_from_json(io::Json::parse(R"({"re":[[1]],"im":[[0]]})")); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { io::matrix_from_json(io::Json::parse(R"({"dim":1,"re":[["a"]],"im":[[0]]})")); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { io::matrix_from_json(io::Json::parse(R"({"dim":0,"re":[],"im":[]})")); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("decomposition JSON validates weights") {
  const auto j = io::Json::parse(R"({"weights":[0.5,0.4],"states":[{"re":[1,0],"im":[0,0]},{"re":[0,1],"im":[0,0]}]})");
  CHECK(code_of([&] { io::decomposition_from_json(j); }) == ErrorCode::WeightMismatch);
}

TEST_CASE("channel spec JSON") {
  const auto j = io::Json::parse(
      R"({"kind":"unitary+depolarizing","h":{"dim":2,"re":[[0.5,0],[0,-0.5]],"im":[[0,0],[0,0]]},"K":3,"gamma":0.25})");
  const auto spec = io::channel_spec_from_json(j);
  CHECK(spec.kind == "unitary+depolarizing");
  CHECK(spec.sites == 3);
  CHECK(spec.gamma == 0.25);
  CHECK(channels::build_channel(spec).dim() == 8);
  const auto again = io::channel_spec_from_json(io::channel_spec_to_json(spec));
  CHECK(again.h == spec.h);

  auto bad = j;
  bad["K"] = 0;
  CHECK(code_of([&] { io::channel_spec_from_json(bad); }) == ErrorCode::ParseError);
}

TEST_CASE("sensitivity JSON writes infinity as null") {
  CHECK(io::sensitivity_to_json(metrology::delta_x_min(0.0, 1)).at("delta_x_min").is_null());
  CHECK(io::sensitivity_to_json(metrology::delta_x_min(4.0, 1)).at("delta_x_min") == 0.5);
}

TEST_CASE("file errors") {
  CHECK(code_of([] { io::read_json_file("/nonexistent/file.json"); }) == ErrorCode::IoError);
  CHECK(code_of([] { io::write_text_file("/nonexistent/dir/out.txt", "x"); }) ==
        ErrorCode::IoError);
}

}  // TEST_SUITE
