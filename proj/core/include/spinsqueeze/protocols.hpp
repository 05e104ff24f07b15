#pragma once

// The four squeezing protocols as segment schedules, their execution, and
// summary helpers.
//
// Times are physical (the clock of chi); reports additionally carry the
// dimensionless clock N chi t.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spinsqueeze/dicke.hpp"
#include "spinsqueeze/metrics.hpp"

namespace spinsq {

/// chi Jz^2 for `duration`.
struct FreeOat {
  double chi = 1.0;
  double duration = 0.0;
};

/// omega_x Jx + chi Jz^2 for `duration`.
struct RotatingOat {
  double chi = 1.0;
  double omega_x = 0.0;
  double duration = 0.0;
};

/// Instantaneous exp(-i angle J_axis).
struct Pulse {
  Axis axis = Axis::Y;
  double angle = 0.0;
};

/// How run_protocol samples a segment.
enum class Sampling {
  Continuous,  // requested sample points inside or at the end are recorded
  Suppressed,  // inside an emulation cycle; never recorded
  CycleEnd,    // closes an emulation cycle; recorded once at its end
};

struct ProtocolSegment {
  std::variant<FreeOat, RotatingOat, Pulse> kind;
  Sampling sampling = Sampling::Continuous;

  double duration() const;
};

enum class ProtocolLabel { PlainOAT, OptimalOAT, EmulatedTACT, Combined, Custom };

std::string_view to_string(ProtocolLabel label);
/// Accepts the CLI names (plain-oat, oat-optimal, tact-emulation, combined,
/// custom); returns nullopt otherwise.
std::optional<ProtocolLabel> parse_protocol_label(std::string_view name);

/// Physical-time parameters of a schedule.
struct ProtocolParameters {
  int n_particles = 100;
  double chi = 1.0;
  double t_max = 0.0;
  double t_cycle = 0.0;  // emulation cycle length
  double t_switch = 0.0;  // Combined only
  double sample_spacing = 0.0;  // 0 selects N chi dt = 0.01
};

inline constexpr double kDefaultNchiSampleSpacing = 0.01;

/// Builds parameters from dimensionless N chi t values.
ProtocolParameters parameters_from_nchi(int n_particles, double chi, double nchi_t_max,
                                        double nchi_t_cycle, double nchi_t_switch,
                                        double nchi_sample_spacing);

struct ProtocolSchedule {
  ProtocolLabel label = ProtocolLabel::Custom;
  ProtocolParameters params;
  std::vector<ProtocolSegment> segments;
  std::vector<double> sample_points;  // strictly increasing

  double total_duration() const;
};

/// PlainOAT: one FreeOat. OptimalOAT: one RotatingOat with omega_x = N chi/2.
/// EmulatedTACT: ceil(t_max/t_cycle) cycles of
///   FreeOat(2/3 t_cycle), Pulse(y, -pi/2), FreeOat(1/3 t_cycle), Pulse(y, +pi/2).
/// Combined: RotatingOat until t_switch (rounded to the sample grid), then
/// cycles for the remainder with no pulse at the handoff.
/// Throws std::invalid_argument for invalid parameter ranges.
ProtocolSchedule build_schedule(ProtocolLabel label, const ProtocolParameters& params);

struct TimeSeries {
  ProtocolLabel label = ProtocolLabel::Custom;
  ProtocolParameters params;
  std::vector<SqueezingReport> records;  // sorted by t
};

struct ProtocolRun {
  TimeSeries series;
  DickeState final_state;
  double final_time = 0.0;
};

/// Applies the schedule to `initial`, recording a SqueezingReport at t = 0,
/// at every sample point reached inside (or at the end of) a continuous
/// segment, and at the end of every emulation cycle.
ProtocolRun run_protocol(const ProtocolSchedule& schedule, const DickeState& initial);

/// State at the last recordable instant not later than `t`: exactly `t`
/// inside continuous segments, otherwise the preceding cycle end.
ProtocolRun evolve_until(const ProtocolSchedule& schedule, const DickeState& initial,
                         double t);

/// Coherent state along +x, the initial state of every protocol.
DickeState equatorial_initial_state(int n_particles);

/// exp(-N chi t) per sample: the large-N limit of the optimal rate.
std::vector<double> asymptote_curve(int n_particles, double chi, std::span<const double> times);

struct BestSqueezing {
  double t = 0.0;
  double nchi_t = 0.0;
  double xi2 = 1.0;
  double xi2_db = 0.0;
};

/// Global minimum of xi2; ties resolve to the earliest record.
BestSqueezing best_squeezing(const TimeSeries& series);

struct SweepRow {
  double t_switch = 0.0;  // after rounding to the sample grid
  BestSqueezing best;
};

/// Runs Combined once per switch time (physical units) and collects
/// best_squeezing. Rows follow grid order; grid points run concurrently on
/// up to `max_workers` threads (0 = hardware concurrency).
std::vector<SweepRow> sweep_switch_time(const ProtocolParameters& base,
                                        std::span<const double> switch_grid,
                                        unsigned max_workers = 0);

}  // namespace spinsq
