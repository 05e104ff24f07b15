#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <utility>
#include <vector>

#include "CLI11.hpp"

namespace spinsq::cli {

using nlohmann::json;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content << std::flush;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw OutputError("cannot open '" + tmp.string() + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw OutputError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw OutputError("cannot move output into '" + path + "'");
  }
}

namespace {

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_number(v);
    first = false;
  }
  out += '\n';
}

json best_json(const BestSqueezing& b) {
  return json{{"nchi_t", b.nchi_t}, {"xi2", b.xi2}, {"xi2_dB", b.xi2_db}};
}

void write_summary(const RunConfig& c, json body) {
  if (c.summary.empty()) return;
  body["config"] = to_json(c);
  write_output(c.summary, body.dump(2) + "\n");
}

}  // namespace

std::string curve_csv(const TimeSeries& series) {
  std::string out = "Nchi_t,xi2,xi2_dB,Vyy,Vzz,Vyz,ellipse_angle_rad,Jx,Jy,Jz\n";
  for (const auto& r : series.records) {
    append_row(out, {r.nchi_t, r.xi2, r.xi2_db, r.v.yy, r.v.zz, r.v.yz, r.ellipse_angle,
                     r.mean_spin[0], r.mean_spin[1], r.mean_spin[2]});
  }
  return out;
}

std::string qfunc_csv(const QFunctionGrid& grid) {
  std::string out = "theta_rad,phi_rad,Q\n";
  out.reserve(out.size() + grid.values.size() * 48);
  for (std::size_t i = 0; i < grid.theta.size(); ++i) {
    for (std::size_t j = 0; j < grid.phi.size(); ++j) {
      append_row(out, {grid.theta[i], grid.phi[j], grid.at(i, j)});
    }
  }
  return out;
}

std::string qfunc_pgm(const QFunctionGrid& grid) {
  std::string out = "P5\n" + std::to_string(grid.phi.size()) + " " +
                    std::to_string(grid.theta.size()) + "\n255\n";
  const double peak = grid.max_value();
  for (double q : grid.values) {
    const double level = peak > 0.0 ? 255.0 * q / peak : 0.0;
    out += static_cast<char>(static_cast<unsigned char>(std::lround(std::clamp(level, 0.0, 255.0))));
  }
  return out;
}

void cmd_run(const RunConfig& c) {
  validate(c, Command::Run);
  const ProtocolSchedule sched = build_schedule(protocol_label(c), to_parameters(c));
  const ProtocolRun run = run_protocol(sched, equatorial_initial_state(c.n));
  write_output(c.out, curve_csv(run.series));
  write_summary(c, json{{"best_squeezing", best_json(best_squeezing(run.series))},
                        {"samples", run.series.records.size()}});
}

void cmd_sweep(const RunConfig& c) {
  validate(c, Command::Sweep);
  const double nchi = c.n * c.chi;
  std::vector<double> grid;
  for (double t : c.switch_grid) grid.push_back(t / nchi);
  const auto rows = sweep_switch_time(to_parameters(c), grid);

  std::string out = "t_switch,best_dB,t_at_best\n";
  json table = json::array();
  for (const auto& r : rows) {
    const double t_switch = r.t_switch * nchi;
    append_row(out, {t_switch, r.best.xi2_db, r.best.nchi_t});
    table.push_back(json{{"t_switch", t_switch}, {"best_squeezing", best_json(r.best)}});
  }
  write_output(c.out, out);
  write_summary(c, json{{"rows", table}});
}

void cmd_qfunc(const RunConfig& c) {
  validate(c, Command::QFunc);
  const ProtocolSchedule sched = build_schedule(protocol_label(c), to_parameters(c));
  const double nchi = c.n * c.chi;
  const ProtocolRun run = evolve_until(sched, equatorial_initial_state(c.n), c.snapshot / nchi);
  const double reached = run.final_time * nchi;
  if (std::abs(reached - c.snapshot) > 1e-9 * std::max(1.0, c.snapshot)) {
    std::cerr << "note: snapshot taken at the last cycle end, N chi t = "
              << format_number(reached) << "\n";
  }
  const QFunctionGrid grid = q_function(run.final_state, c.n_theta, c.n_phi);
  write_output(c.out, qfunc_csv(grid));
  if (!c.ppm.empty()) write_output(c.ppm, qfunc_pgm(grid));

  const SqueezingReport r = squeezing_parameter(run.final_state);
  write_summary(c, json{{"snapshot", {{"requested", c.snapshot}, {"reached", reached}}},
                        {"xi2_dB", r.xi2_db},
                        {"q_max", grid.max_value()}});
}

namespace {

// Flags override the config file only when given on the command line, so
// every option remembers how to copy its value into the merged config.
struct Binding {
  CLI::Option* option;
  std::function<void(RunConfig&, const RunConfig&)> copy;
};

template <class T>
CLI::Option* add_flag(CLI::App* app, std::vector<Binding>& out, RunConfig& flags, const std::string& name,
              T RunConfig::*field, const std::string& help) {
  CLI::Option* o = app->add_option(name, flags.*field, help)->capture_default_str();
  out.push_back({o, [field](RunConfig& dst, const RunConfig& src) { dst.*field = src.*field; }});
  return o;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Spin squeezing by one- and two-axis twisting"};
  app.require_subcommand(1);

  RunConfig flags;
  std::string config_path;
  std::vector<Binding> bindings;

  struct Sub {
    CLI::App* app;
    Command cmd;
  };
  std::vector<Sub> subs{
      {app.add_subcommand("run", "Evolve one protocol and write the squeezing curve"),
       Command::Run},
      {app.add_subcommand("sweep", "Best squeezing of the combined protocol per switch time"),
       Command::Sweep},
      {app.add_subcommand("qfunc", "Husimi Q-function of the state at a snapshot time"),
       Command::QFunc},
  };
  for (auto& s : subs) {
    CLI::App* a = s.app;
    a->add_option("--config", config_path, "JSON config or summary file; flags override it");
    add_flag(a, bindings, flags, "--protocol", &RunConfig::protocol,
         "plain-oat | oat-optimal | tact-emulation | combined");
    add_flag(a, bindings, flags, "--n", &RunConfig::n, "number of particles");
    add_flag(a, bindings, flags, "--chi", &RunConfig::chi, "twisting strength (time unit)");
    add_flag(a, bindings, flags, "--t-max", &RunConfig::t_max, "final N chi t");
    add_flag(a, bindings, flags, "--t-cycle", &RunConfig::t_cycle, "emulation cycle length, N chi t");
    add_flag(a, bindings, flags, "--t-switch", &RunConfig::t_switch,
         "combined protocol switch time, N chi t");
    add_flag(a, bindings, flags, "--sample-spacing", &RunConfig::sample_spacing,
         "sample grid spacing, N chi t");
    add_flag(a, bindings, flags, "--out", &RunConfig::out, "CSV output path (default stdout)");
    add_flag(a, bindings, flags, "--summary", &RunConfig::summary, "JSON summary path");
    if (s.cmd == Command::Sweep) {
      add_flag(a, bindings, flags, "--switch-grid", &RunConfig::switch_grid,
           "switch times, N chi t")
          ->delimiter(',');
    }
    if (s.cmd == Command::QFunc) {
      add_flag(a, bindings, flags, "--snapshot", &RunConfig::snapshot, "snapshot N chi t");
      add_flag(a, bindings, flags, "--n-theta", &RunConfig::n_theta, "polar grid points");
      add_flag(a, bindings, flags, "--n-phi", &RunConfig::n_phi, "azimuthal grid points");
      add_flag(a, bindings, flags, "--ppm", &RunConfig::ppm, "grayscale heatmap path");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto active = std::find_if(subs.begin(), subs.end(),
                                   [](const Sub& s) { return s.app->parsed(); });
  try {
    RunConfig c;
    if (active->cmd == Command::Sweep) c.protocol = "combined";
    if (!config_path.empty()) c = load_config_file(config_path, c);
    for (const auto& b : bindings) {
      if (b.option->count() > 0) b.copy(c, flags);
    }
    switch (active->cmd) {
      case Command::Run: cmd_run(c); break;
      case Command::Sweep: cmd_sweep(c); break;
      case Command::QFunc: cmd_qfunc(c); break;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace spinsq::cli
