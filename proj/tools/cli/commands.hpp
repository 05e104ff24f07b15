#pragma once

#include <string>

#include "config.hpp"
#include "spinsqueeze/husimi.hpp"

namespace spinsq::cli {

/// %.12g, the CSV number format.
std::string format_number(double v);

/// Writes `content` to a temporary sibling of `path`, then renames it into
/// place. An empty path writes to stdout.
void write_output(const std::string& path, const std::string& content);

std::string curve_csv(const TimeSeries& series);
std::string qfunc_csv(const QFunctionGrid& grid);
/// Binary graymap, max-normalized; row = theta, column = phi.
std::string qfunc_pgm(const QFunctionGrid& grid);

void cmd_run(const RunConfig& config);
void cmd_sweep(const RunConfig& config);
void cmd_qfunc(const RunConfig& config);

/// Full command line, including argv[0]. Returns the process exit status:
/// 0 success, 2 configuration error, 1 numerical or output failure.
int run_cli(int argc, const char* const* argv);

}  // namespace spinsq::cli
