#include "qsense/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qsense/error.hpp"

namespace qsense::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorCode::ParseError, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) parse_error(std::string(what) + " must be a number");
  return j.get<double>();
}

Json vector_part(const ComplexVector& v, bool imag) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(imag ? v(i).imag() : v(i).real());
  return out;
}

ComplexVector vector_from_parts(const Json& re, const Json& im) {
  if (!re.is_array() || !im.is_array() || re.size() != im.size() || re.empty()) {
    parse_error("state 're'/'im' must be equal-length non-empty arrays");
  }
  ComplexVector v(static_cast<Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) {
    v(static_cast<Index>(i)) = Complex(number(re[i], "amplitude"), number(im[i], "amplitude"));
  }
  return v;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row_re = Json::array();
    Json row_im = Json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      row_re.push_back(m(r, c).real());
      row_im.push_back(m(r, c).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  return Json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const Json& dim_j = field(j, "dim");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) {
    parse_error("'dim' must be a positive integer");
  }
  const auto n = static_cast<Index>(dim_j.get<long long>());
  const Json& re = field(j, "re");
  const Json& im = field(j, "im");
  const auto rows_ok = [n](const Json& a) {
    if (!a.is_array() || static_cast<Index>(a.size()) != n) return false;
    for (const auto& row : a) {
      if (!row.is_array() || static_cast<Index>(row.size()) != n) return false;
    }
    return true;
  };
  if (!rows_ok(re) || !rows_ok(im)) parse_error("'re'/'im' must be dim x dim arrays");
  ComplexMatrix m(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      m(r, c) = Complex(number(re[r][c], "matrix entry"), number(im[r][c], "matrix entry"));
    }
  }
  if (!m.allFinite()) parse_error("matrix entries must be finite");
  return m;
}

Json state_to_json(const PureState& psi) {
  return Json{{"re", vector_part(psi.amplitudes(), false)},
              {"im", vector_part(psi.amplitudes(), true)}};
}

PureState state_from_json(const Json& j) {
  return PureState(vector_from_parts(field(j, "re"), field(j, "im")));
}

Json decomposition_to_json(const Decomposition& d) {
  Json states = Json::array();
  for (const auto& s : d.states()) states.push_back(state_to_json(s));
  return Json{{"weights", d.weights()}, {"states", std::move(states)}};
}

Decomposition decomposition_from_json(const Json& j) {
  const Json& w = field(j, "weights");
  const Json& s = field(j, "states");
  if (!w.is_array() || !s.is_array()) parse_error("'weights' and 'states' must be arrays");
  std::vector<double> weights;
  for (const auto& x : w) weights.push_back(number(x, "weight"));
  std::vector<PureState> states;
  for (const auto& x : s) states.push_back(state_from_json(x));
  return Decomposition(std::move(weights), std::move(states));
}

Json channel_spec_to_json(const channels::ChannelSpec& spec) {
  return Json{{"kind", spec.kind},
              {"h", matrix_to_json(spec.h)},
              {"K", spec.sites},
              {"gamma", spec.gamma}};
}

channels::ChannelSpec channel_spec_from_json(const Json& j) {
  channels::ChannelSpec spec;
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) parse_error("'kind' must be a string");
  spec.kind = kind.get<std::string>();
  spec.h = matrix_from_json(field(j, "h"));
  if (j.contains("K")) {
    if (!j.at("K").is_number_integer() || j.at("K").get<long long>() < 1) {
      parse_error("'K' must be a positive integer");
    }
    spec.sites = j.at("K").get<int>();
  }
  if (j.contains("gamma")) spec.gamma = number(j.at("gamma"), "gamma");
  return spec;
}

Json sensitivity_to_json(const SensitivityReport& r) {
  Json out{{"qfi", r.qfi}, {"n_repetitions", r.n_repetitions}};
  if (std::isfinite(r.delta_x_min)) {
    out["delta_x_min"] = r.delta_x_min;
  } else {
    out["delta_x_min"] = nullptr;
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    parse_error("'" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace qsense::io
