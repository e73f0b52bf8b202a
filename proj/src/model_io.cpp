#include "polynet/model_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

namespace polynet {

namespace {

double require_number(const nlohmann::json& j, const char* field,
                      const std::string& where) {
  if (!j.contains(field) || !j.at(field).is_number())
    throw ParseError(where + ": missing numeric field \"" + field + "\"");
  return j.at(field).get<double>();
}

DistributionSpec dist_from_json(const nlohmann::json& j,
                                const std::string& where) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ParseError(where + ": expected an object with a \"kind\" string");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "deterministic")
    return DistributionSpec::deterministic(require_number(j, "value", where));
  if (kind == "exponential")
    return DistributionSpec::exponential(require_number(j, "mean", where));
  if (kind == "uniform")
    return DistributionSpec::uniform(require_number(j, "lower", where),
                                     require_number(j, "upper", where));
  if (kind == "gamma")
    return DistributionSpec::gamma(require_number(j, "shape", where),
                                   require_number(j, "rate", where));
  throw ParseError(where + ": unknown distribution kind \"" + kind + "\"");
}

nlohmann::json dist_to_json(const DistributionSpec& d) {
  switch (d.kind()) {
    case DistKind::deterministic:
      return {{"kind", "deterministic"}, {"value", d.p0()}};
    case DistKind::exponential:
      return {{"kind", "exponential"}, {"mean", d.p0()}};
    case DistKind::uniform:
      return {{"kind", "uniform"}, {"lower", d.p0()}, {"upper", d.p1()}};
    case DistKind::gamma:
      return {{"kind", "gamma"}, {"shape", d.p0()}, {"rate", d.p1()}};
  }
  throw std::logic_error("dist_to_json: unhandled kind");
}

const nlohmann::json& require_array(const nlohmann::json& j, const char* field,
                                    std::size_t size) {
  if (!j.contains(field) || !j.at(field).is_array())
    throw ParseError(std::string("model: missing array field \"") + field +
                     "\"");
  const auto& a = j.at(field);
  if (a.size() != size)
    throw ParseError(std::string("model: \"") + field + "\" must have " +
                     std::to_string(size) + " entries, got " +
                     std::to_string(a.size()));
  return a;
}

}  // namespace

NetworkModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("model: top level must be an object");
  if (!j.contains("n") || !j.at("n").is_number_integer())
    throw ParseError("model: missing integer field \"n\"");
  const auto n_signed = j.at("n").get<std::int64_t>();
  if (n_signed < 1) throw ParseError("model: \"n\" must be at least 1");
  const auto n = static_cast<std::size_t>(n_signed);

  NetworkModel m;
  m.n = static_cast<Eigen::Index>(n);

  const auto& weights = require_array(j, "arrival_weights", n);
  m.arrival_weights.resize(m.n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!weights[i].is_number())
      throw ParseError("model: arrival_weights[" + std::to_string(i) +
                       "] must be a number");
    m.arrival_weights[static_cast<Eigen::Index>(i)] = weights[i].get<double>();
  }

  const auto& service = require_array(j, "service", n);
  const auto& switchover = require_array(j, "switchover", n);
  for (std::size_t i = 0; i < n; ++i) {
    m.service.push_back(
        dist_from_json(service[i], "service[" + std::to_string(i) + "]"));
    m.switchover.push_back(dist_from_json(
        switchover[i], "switchover[" + std::to_string(i) + "]"));
  }

  const auto& routing = require_array(j, "routing", n);
  m.routing.resize(m.n, m.n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!routing[i].is_array() || routing[i].size() != n)
      throw ParseError("model: routing[" + std::to_string(i) +
                       "] must be a row of " + std::to_string(n) + " numbers");
    for (std::size_t k = 0; k < n; ++k) {
      if (!routing[i][k].is_number())
        throw ParseError("model: routing[" + std::to_string(i) + "][" +
                         std::to_string(k) + "] must be a number");
      m.routing(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          routing[i][k].get<double>();
    }
  }
  return m;
}

nlohmann::json model_to_json(const NetworkModel& model) {
  nlohmann::json j;
  j["n"] = model.n;
  j["arrival_weights"] = nlohmann::json::array();
  for (Eigen::Index i = 0; i < model.n; ++i)
    j["arrival_weights"].push_back(model.arrival_weights[i]);
  j["service"] = nlohmann::json::array();
  j["switchover"] = nlohmann::json::array();
  for (Eigen::Index i = 0; i < model.n; ++i) {
    j["service"].push_back(dist_to_json(model.service[static_cast<std::size_t>(i)]));
    j["switchover"].push_back(
        dist_to_json(model.switchover[static_cast<std::size_t>(i)]));
  }
  j["routing"] = nlohmann::json::array();
  for (Eigen::Index i = 0; i < model.n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < model.n; ++k)
      row.push_back(model.routing(i, k));
    j["routing"].push_back(row);
  }
  return j;
}

NetworkModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open model file: " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  NetworkModel m = model_from_json(j);
  require_valid(m);
  return m;
}

void save_model(const NetworkModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw ParseError("cannot write model file: " + path.string());
  out << model_to_json(model).dump(2) << '\n';
}

std::string model_digest(const NetworkModel& model) {
  const std::string canon = model_to_json(model).dump();
  std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace polynet
