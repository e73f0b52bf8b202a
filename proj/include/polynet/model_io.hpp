#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "polynet/model.hpp"

namespace polynet {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Schema: {"n": int, "arrival_weights": [num x n],
//          "service": [dist x n], "switchover": [dist x n],
//          "routing": [[num x n] x n]}
// with dist one of {"kind":"deterministic","value":v},
// {"kind":"exponential","mean":m}, {"kind":"uniform","lower":a,"upper":b},
// {"kind":"gamma","shape":k,"rate":r}.
NetworkModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const NetworkModel& model);

// Parses and fully validates a model file. Throws ParseError on unreadable
// or malformed input (with line context from the JSON parser) and
// ValidationError carrying every violated model invariant.
NetworkModel load_model(const std::filesystem::path& path);
void save_model(const NetworkModel& model, const std::filesystem::path& path);

// Stable hex fingerprint of the canonical serialization; reports embed it so
// results can be traced back to the exact model.
std::string model_digest(const NetworkModel& model);

}  // namespace polynet
