#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flow/composition.hpp"
#include "flow/operators.hpp"
#include "flow/process_registry.hpp"
#include "flow/sequential.hpp"
#include "flow/state.hpp"

namespace flow {

/// Exact non-negative rational used for virtual time.
class Duration {
 public:
  Duration() = default;
  Duration(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// Accepts integers, finite decimals ("1.25") and fractions ("3/2").
  static std::optional<Duration> parse(std::string_view text);

  friend Duration operator+(Duration a, Duration b);
  friend bool operator==(Duration a, Duration b) = default;
  friend std::strong_ordering operator<=>(Duration a, Duration b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// "3" or "3/2".
std::string format_duration(Duration d);

struct DurationModel {
  std::map<OperatorId, Duration> durations;  // missing entries last 1

  Duration of(OperatorId op) const;
  /// Throws InvalidDuration when `d` is not positive.
  void set(OperatorId op, Duration d);
};

struct ScheduleEntry {
  Duration start;
  Duration end;
  OperatorId op;
  TraceEvent event;
};

/// Ordered by start time, then declaration index.
using Schedule = std::vector<ScheduleEntry>;

/// Snapshot taken at each event time after all startable operators have
/// been started.
struct EventPoint {
  Duration time;
  ExecutionState state;
  std::vector<OperatorId> running;
};

struct SimulationResult {
  RunResult run;
  Schedule schedule;
  std::vector<EventPoint> events;
};

/// Enabled operators whose neighborhood is disjoint from every running
/// operator's neighborhood, longest waiting first then declaration index.
std::vector<OperatorId> startable_set(const Composition& comp, const ExecutionState& state,
                                      std::span<const OperatorId> running);

/// Discrete-event run in virtual time. Inputs are read when an operator
/// starts; its writes and marking update land when it ends. Completions at
/// one instant are committed in declaration order before any start.
/// `limits.max_steps` bounds the number of started firings.
SimulationResult simulate_concurrent(const Composition& comp, const ExecutionState& initial,
                                     const ProcessRegistry& reg,
                                     const DurationModel& durations = {}, RunLimits limits = {});

/// `start<TAB>end<TAB>operator<TAB>writes` per entry.
std::string format_schedule(const Composition& comp, const Schedule& schedule);

}  // namespace flow
