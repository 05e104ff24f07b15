#include "spinsqueeze/protocols.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>
#include <utility>

#include "spinsqueeze/propagators.hpp"

namespace spinsq {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

double time_epsilon(const ProtocolSchedule& schedule) {
  const double spacing = schedule.params.sample_spacing;
  if (spacing > 0.0) return 1e-9 * spacing;
  return 1e-12 * std::max(1.0, schedule.total_duration());
}

void append_cycles(std::vector<ProtocolSegment>& segments, double chi, double t_cycle,
                   std::size_t count) {
  for (std::size_t c = 0; c < count; ++c) {
    segments.push_back({FreeOat{chi, t_cycle * 2.0 / 3.0}, Sampling::Suppressed});
    segments.push_back({Pulse{Axis::Y, -kHalfPi}, Sampling::Suppressed});
    segments.push_back({FreeOat{chi, t_cycle / 3.0}, Sampling::Suppressed});
    segments.push_back({Pulse{Axis::Y, kHalfPi}, Sampling::CycleEnd});
  }
}

std::size_t cycles_needed(double span, double t_cycle) {
  if (span <= 0.0) return 0;
  return static_cast<std::size_t>(std::ceil(span / t_cycle - 1e-9));
}

// Applies segments while reusing the expensive propagator tables.
class SegmentEngine {
 public:
  explicit SegmentEngine(int n_particles) : n_(n_particles), ops_(n_particles) {}

  const CollectiveOperators& ops() const { return ops_; }

  DickeState advance(const DickeState& state, const ProtocolSegment& seg, double dt) {
    return std::visit(
        [&](const auto& k) -> DickeState {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, FreeOat>) {
            return evolve_oat(state, k.chi, dt);
          } else if constexpr (std::is_same_v<K, RotatingOat>) {
            return evolve_rotating_oat(state, spectral(k.chi, k.omega_x), dt);
          } else {
            return rotation(k.axis, k.angle).apply(state);
          }
        },
        seg.kind);
  }

 private:
  const TridiagonalSpectralCache& spectral(double chi, double omega_x) {
    for (const auto& c : spectral_) {
      if (c.chi() == chi && c.omega_x() == omega_x) return c;
    }
    spectral_.push_back(build_spectral_cache(n_, omega_x, chi));
    return spectral_.back();
  }

  const AxisRotation& rotation(Axis axis, double angle) {
    for (const auto& r : rotations_) {
      if (r.axis() == axis && r.angle() == angle) return r;
    }
    rotations_.emplace_back(n_, axis, angle);
    return rotations_.back();
  }

  int n_;
  CollectiveOperators ops_;
  std::deque<TridiagonalSpectralCache> spectral_;
  std::deque<AxisRotation> rotations_;
};

ProtocolRun execute(const ProtocolSchedule& schedule, const DickeState& initial,
                    std::optional<double> stop) {
  if (initial.particles() != schedule.params.n_particles) {
    throw std::invalid_argument("run_protocol: initial state dimension does not match schedule");
  }
  const double eps = time_epsilon(schedule);
  const double clock = schedule.params.n_particles * schedule.params.chi;
  SegmentEngine engine(initial.particles());

  ProtocolRun run{TimeSeries{schedule.label, schedule.params, {}}, initial, 0.0};
  DickeState& state = run.final_state;
  double& t = run.final_time;
  auto record = [&] {
    SqueezingReport r = squeezing_parameter(engine.ops(), state);
    r.t = t;
    r.nchi_t = clock * t;
    run.series.records.push_back(r);
  };
  const bool recording = !stop.has_value();
  if (recording) record();

  const auto& samples = schedule.sample_points;
  std::size_t next_sample = 0;
  auto skip_samples_through = [&](double time) {
    while (next_sample < samples.size() && samples[next_sample] <= time + eps) ++next_sample;
  };
  skip_samples_through(0.0);

  const auto& segs = schedule.segments;
  std::size_t i = 0;
  while (i < segs.size()) {
    if (stop && t >= *stop - eps) break;

    if (segs[i].sampling == Sampling::Continuous) {
      const ProtocolSegment& seg = segs[i];
      double end = t + seg.duration();
      const bool truncated = stop && end > *stop + eps;
      if (truncated) end = *stop;
      if (std::holds_alternative<Pulse>(seg.kind)) {
        state = engine.advance(state, seg, 0.0);
      } else {
        while (recording && next_sample < samples.size() && samples[next_sample] <= end + eps) {
          const double ts = std::min(samples[next_sample], end);
          state = engine.advance(state, seg, ts - t);
          t = ts;
          record();
          ++next_sample;
        }
        if (end - t > 0.0) state = engine.advance(state, seg, end - t);
      }
      t = end;
      ++i;
      if (truncated) break;
      continue;
    }

    // An emulation cycle is applied atomically: [i, j] ends at a CycleEnd
    // segment or at the end of the schedule.
    std::size_t j = i;
    double block = segs[i].duration();
    while (segs[j].sampling != Sampling::CycleEnd && j + 1 < segs.size() &&
           segs[j + 1].sampling != Sampling::Continuous) {
      ++j;
      block += segs[j].duration();
    }
    if (stop && t + block > *stop + eps) break;
    for (std::size_t k = i; k <= j; ++k) {
      state = engine.advance(state, segs[k], segs[k].duration());
      t += segs[k].duration();
    }
    skip_samples_through(t);
    if (recording && segs[j].sampling == Sampling::CycleEnd) record();
    i = j + 1;
  }
  return run;
}

}  // namespace

double ProtocolSegment::duration() const {
  return std::visit(
      [](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Pulse>) {
          return 0.0;
        } else {
          return k.duration;
        }
      },
      kind);
}

double ProtocolSchedule::total_duration() const {
  double total = 0.0;
  for (const auto& s : segments) total += s.duration();
  return total;
}

std::string_view to_string(ProtocolLabel label) {
  switch (label) {
    case ProtocolLabel::PlainOAT: return "plain-oat";
    case ProtocolLabel::OptimalOAT: return "oat-optimal";
    case ProtocolLabel::EmulatedTACT: return "tact-emulation";
    case ProtocolLabel::Combined: return "combined";
    case ProtocolLabel::Custom: return "custom";
  }
  return "custom";
}

std::optional<ProtocolLabel> parse_protocol_label(std::string_view name) {
  for (auto label : {ProtocolLabel::PlainOAT, ProtocolLabel::OptimalOAT,
                     ProtocolLabel::EmulatedTACT, ProtocolLabel::Combined,
                     ProtocolLabel::Custom}) {
    if (name == to_string(label)) return label;
  }
  return std::nullopt;
}

ProtocolParameters parameters_from_nchi(int n_particles, double chi, double nchi_t_max,
                                        double nchi_t_cycle, double nchi_t_switch,
                                        double nchi_sample_spacing) {
  require(n_particles >= 1, "N must be >= 1");
  require(std::isfinite(chi) && chi > 0.0, "chi must be positive and finite");
  const double unit = 1.0 / (n_particles * chi);
  ProtocolParameters p;
  p.n_particles = n_particles;
  p.chi = chi;
  p.t_max = nchi_t_max * unit;
  p.t_cycle = nchi_t_cycle * unit;
  p.t_switch = nchi_t_switch * unit;
  p.sample_spacing = nchi_sample_spacing * unit;
  return p;
}

ProtocolSchedule build_schedule(ProtocolLabel label, const ProtocolParameters& params) {
  require(label != ProtocolLabel::Custom, "build_schedule: custom schedules are assembled by hand");
  require(params.n_particles >= 1, "N must be >= 1");
  require(std::isfinite(params.chi) && params.chi > 0.0, "chi must be positive and finite");
  require(std::isfinite(params.t_max) && params.t_max >= 0.0, "t_max must be >= 0");
  require(std::isfinite(params.sample_spacing) && params.sample_spacing >= 0.0,
          "sample spacing must be >= 0");

  ProtocolSchedule s;
  s.label = label;
  s.params = params;
  const double nchi = params.n_particles * params.chi;
  if (s.params.sample_spacing == 0.0) s.params.sample_spacing = kDefaultNchiSampleSpacing / nchi;
  const double spacing = s.params.sample_spacing;
  const double t_max = params.t_max;

  const bool uses_cycles =
      label == ProtocolLabel::EmulatedTACT || label == ProtocolLabel::Combined;
  if (uses_cycles) {
    require(std::isfinite(params.t_cycle) && params.t_cycle > 0.0, "t_cycle must be > 0");
  }

  switch (label) {
    case ProtocolLabel::PlainOAT:
      s.segments.push_back({FreeOat{params.chi, t_max}, Sampling::Continuous});
      break;
    case ProtocolLabel::OptimalOAT:
      s.segments.push_back({RotatingOat{params.chi, 0.5 * nchi, t_max}, Sampling::Continuous});
      break;
    case ProtocolLabel::EmulatedTACT:
      append_cycles(s.segments, params.chi, params.t_cycle, cycles_needed(t_max, params.t_cycle));
      break;
    case ProtocolLabel::Combined: {
      require(std::isfinite(params.t_switch) && params.t_switch >= 0.0 &&
                  params.t_switch <= t_max * (1.0 + 1e-12),
              "t_switch must lie in [0, t_max]");
      double t_switch = std::round(params.t_switch / spacing) * spacing;
      if (t_switch > t_max) t_switch = std::floor(t_max / spacing) * spacing;
      s.params.t_switch = t_switch;
      if (t_switch > 0.0) {
        s.segments.push_back(
            {RotatingOat{params.chi, 0.5 * nchi, t_switch}, Sampling::Continuous});
      }
      append_cycles(s.segments, params.chi, params.t_cycle,
                    cycles_needed(t_max - t_switch, params.t_cycle));
      break;
    }
    case ProtocolLabel::Custom:
      break;
  }

  const auto grid = static_cast<std::size_t>(std::floor(t_max / spacing + 1e-9));
  s.sample_points.reserve(grid + 2);
  for (std::size_t k = 0; k <= grid; ++k) s.sample_points.push_back(k * spacing);
  if (t_max - s.sample_points.back() > 1e-9 * spacing) s.sample_points.push_back(t_max);
  return s;
}

ProtocolRun run_protocol(const ProtocolSchedule& schedule, const DickeState& initial) {
  return execute(schedule, initial, std::nullopt);
}

ProtocolRun evolve_until(const ProtocolSchedule& schedule, const DickeState& initial,
                         double t) {
  require(std::isfinite(t) && t >= 0.0, "evolve_until: time must be >= 0");
  return execute(schedule, initial, t);
}

DickeState equatorial_initial_state(int n_particles) {
  return make_coherent_state(n_particles, kHalfPi, 0.0);
}

std::vector<double> asymptote_curve(int n_particles, double chi,
                                    std::span<const double> times) {
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(std::exp(-n_particles * chi * t));
  return out;
}

BestSqueezing best_squeezing(const TimeSeries& series) {
  if (series.records.empty()) throw std::invalid_argument("best_squeezing: empty series");
  const SqueezingReport* best = &series.records.front();
  for (const auto& r : series.records) {
    if (r.xi2 < best->xi2) best = &r;
  }
  return BestSqueezing{best->t, best->nchi_t, best->xi2, best->xi2_db};
}

std::vector<SweepRow> sweep_switch_time(const ProtocolParameters& base,
                                        std::span<const double> switch_grid,
                                        unsigned max_workers) {
  require(!switch_grid.empty(), "sweep_switch_time: empty switch grid");
  std::vector<SweepRow> rows(switch_grid.size());
  std::vector<std::exception_ptr> errors(switch_grid.size());

  auto run_one = [&](std::size_t idx) {
    try {
      ProtocolParameters p = base;
      p.t_switch = switch_grid[idx];
      const ProtocolSchedule schedule = build_schedule(ProtocolLabel::Combined, p);
      const ProtocolRun run =
          run_protocol(schedule, equatorial_initial_state(p.n_particles));
      rows[idx] = SweepRow{schedule.params.t_switch, best_squeezing(run.series)};
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  };

  unsigned workers = max_workers != 0 ? max_workers : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(switch_grid.size()));
  if (workers == 1) {
    for (std::size_t idx = 0; idx < switch_grid.size(); ++idx) run_one(idx);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t idx = next++; idx < switch_grid.size(); idx = next++) run_one(idx);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

}  // namespace spinsq
