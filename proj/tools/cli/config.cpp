#include "config.hpp"

#include <cmath>
#include <fstream>

namespace spinsq::cli {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

template <class T>
void take(const json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

json to_json(const RunConfig& c) {
  return json{{"protocol", c.protocol},   {"n", c.n},
              {"chi", c.chi},             {"t_max", c.t_max},
              {"t_cycle", c.t_cycle},     {"t_switch", c.t_switch},
              {"sample_spacing", c.sample_spacing},
              {"out", c.out},             {"summary", c.summary},
              {"switch_grid", c.switch_grid},
              {"snapshot", c.snapshot},   {"n_theta", c.n_theta},
              {"n_phi", c.n_phi},         {"ppm", c.ppm}};
}

RunConfig merge_json(RunConfig base, const json& j) {
  const json& src = (j.is_object() && j.contains("config")) ? j.at("config") : j;
  require(src.is_object(), "config must be a JSON object");
  const json known = to_json(base);
  for (const auto& [key, value] : src.items()) {
    require(known.contains(key), "unknown config key '" + key + "'");
  }
  take(src, "protocol", base.protocol);
  take(src, "n", base.n);
  take(src, "chi", base.chi);
  take(src, "t_max", base.t_max);
  take(src, "t_cycle", base.t_cycle);
  take(src, "t_switch", base.t_switch);
  take(src, "sample_spacing", base.sample_spacing);
  take(src, "out", base.out);
  take(src, "summary", base.summary);
  take(src, "switch_grid", base.switch_grid);
  take(src, "snapshot", base.snapshot);
  take(src, "n_theta", base.n_theta);
  take(src, "n_phi", base.n_phi);
  take(src, "ppm", base.ppm);
  return base;
}

RunConfig load_config_file(const std::string& path, const RunConfig& base) {
  std::ifstream in(path);
  require(in.good(), "cannot read config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return merge_json(base, j);
}

ProtocolLabel protocol_label(const RunConfig& c) {
  const auto label = parse_protocol_label(c.protocol);
  require(label.has_value() && *label != ProtocolLabel::Custom,
          "unknown protocol '" + c.protocol +
              "' (expected plain-oat, oat-optimal, tact-emulation or combined)");
  return *label;
}

void validate(const RunConfig& c, Command cmd) {
  require(!c.protocol.empty(), "--protocol is required");
  const ProtocolLabel label = protocol_label(c);
  require(c.n >= 1, "--n must be >= 1");
  require(std::isfinite(c.chi) && c.chi > 0.0, "--chi must be positive");
  require(nonneg(c.t_max), "--t-max must be >= 0");
  require(nonneg(c.t_switch), "--t-switch must be >= 0");
  require(std::isfinite(c.sample_spacing) && c.sample_spacing > 0.0,
          "--sample-spacing must be positive");
  if (label == ProtocolLabel::EmulatedTACT || label == ProtocolLabel::Combined) {
    require(std::isfinite(c.t_cycle) && c.t_cycle > 0.0, "--t-cycle must be positive");
  }
  if (label == ProtocolLabel::Combined) {
    require(c.t_switch <= c.t_max, "--t-switch must not exceed --t-max");
  }
  switch (cmd) {
    case Command::Run:
      break;
    case Command::Sweep:
      require(label == ProtocolLabel::Combined, "sweep runs the combined protocol only");
      require(!c.switch_grid.empty(), "--switch-grid must list at least one switch time");
      for (double t : c.switch_grid) {
        require(nonneg(t) && t <= c.t_max, "switch times must lie in [0, t_max]");
      }
      break;
    case Command::QFunc:
      require(nonneg(c.snapshot), "--snapshot must be >= 0");
      require(c.snapshot <= c.t_max, "--snapshot must not exceed --t-max");
      require(c.n_theta >= 2 && c.n_phi >= 2, "--n-theta and --n-phi must be >= 2");
      break;
  }
}

ProtocolParameters to_parameters(const RunConfig& c) {
  return parameters_from_nchi(c.n, c.chi, c.t_max, c.t_cycle, c.t_switch, c.sample_spacing);
}

}  // namespace spinsq::cli
