#pragma once

// Run configuration shared by the run, sweep and qfunc subcommands.
// Every time is in units of N chi t.

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "spinsqueeze/protocols.hpp"

namespace spinsq::cli {

/// Invalid or inconsistent configuration; maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output could not be written; maps to exit status 1.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string protocol;
  int n = 100;
  double chi = 1.0;
  double t_max = 10.0;
  double t_cycle = 0.04;
  double t_switch = 0.0;
  double sample_spacing = kDefaultNchiSampleSpacing;

  std::string out;      // CSV path; empty writes to stdout
  std::string summary;  // JSON summary path; empty disables it

  std::vector<double> switch_grid;  // sweep
  double snapshot = 0.0;            // qfunc
  std::size_t n_theta = 181;
  std::size_t n_phi = 360;
  std::string ppm;  // qfunc heatmap path; empty disables it
};

enum class Command { Run, Sweep, QFunc };

nlohmann::json to_json(const RunConfig& c);

/// Overlays the keys of `j` on `base`. Accepts either a bare config object or
/// a summary file carrying one under "config". Unknown keys are rejected.
RunConfig merge_json(RunConfig base, const nlohmann::json& j);

RunConfig load_config_file(const std::string& path, const RunConfig& base);

/// Throws ConfigError with an explicit message on the first violation.
void validate(const RunConfig& c, Command cmd);

ProtocolLabel protocol_label(const RunConfig& c);

/// Physical-time parameters for core. Assumes validate() passed.
ProtocolParameters to_parameters(const RunConfig& c);

}  // namespace spinsq::cli
