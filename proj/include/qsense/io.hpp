#pragma once

#include <string>

#include <json.hpp>

#include "qsense/channels.hpp"
#include "qsense/metrology.hpp"
#include "qsense/states.hpp"

/// JSON interchange formats.
///
///   matrix:        {"dim": n, "re": [[...]], "im": [[...]]}   (row-major)
///   decomposition: {"weights": [...], "states": [{"re": [...], "im": [...]}, ...]}
///   channel:       {"kind": "unitary" | "unitary+depolarizing",
///                   "h": matrix, "K": n, "gamma": g}
///
/// Doubles are written in shortest round-trip form, so values survive a
/// write/read cycle exactly.
namespace qsense::io {

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json state_to_json(const PureState& psi);
PureState state_from_json(const Json& j);

Json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const Json& j);

Json channel_spec_to_json(const channels::ChannelSpec& spec);
channels::ChannelSpec channel_spec_from_json(const Json& j);

/// Infinite delta_x_min is written as null.
Json sensitivity_to_json(const SensitivityReport& r);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qsense::io
