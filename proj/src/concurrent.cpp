#include "flow/concurrent.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "flow/error.hpp"

namespace flow {

Duration::Duration(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::InvalidDuration, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
}

std::optional<Duration> Duration::parse(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::optional<std::int64_t> {
    std::int64_t v = 0;
    if (s.empty()) return std::nullopt;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto n = parse_int(text.substr(0, slash));
    auto d = parse_int(text.substr(slash + 1));
    if (!n || !d || *d == 0) return std::nullopt;
    return Duration(*n, *d);
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    auto n = parse_int(text);
    if (!n) return std::nullopt;
    return Duration(*n);
  }
  auto whole = text.substr(0, dot);
  auto frac = text.substr(dot + 1);
  if (frac.empty() || frac.size() > 9 || whole.size() > 9) return std::nullopt;
  if (!std::all_of(frac.begin(), frac.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  auto w = whole.empty() ? std::optional<std::int64_t>(0) : parse_int(whole);
  auto f = parse_int(frac);
  if (!w || !f || *w < 0) return std::nullopt;
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  return Duration(*w * scale + *f, scale);
}

Duration operator+(Duration a, Duration b) {
  return Duration(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

std::strong_ordering operator<=>(Duration a, Duration b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string format_duration(Duration d) {
  if (d.den() == 1) return std::to_string(d.num());
  return std::to_string(d.num()) + "/" + std::to_string(d.den());
}

Duration DurationModel::of(OperatorId op) const {
  auto it = durations.find(op);
  return it == durations.end() ? Duration(1) : it->second;
}

void DurationModel::set(OperatorId op, Duration d) {
  if (d <= Duration(0))
    throw Error(ErrorKind::InvalidDuration, "duration must be positive, got " + format_duration(d));
  durations[op] = d;
}

std::vector<OperatorId> startable_set(const Composition& comp, const ExecutionState& state,
                                      std::span<const OperatorId> running) {
  std::vector<bool> busy(comp.data_count(), false);
  for (OperatorId r : running)
    for (DataId d : neighborhood(comp, r)) busy[d.index] = true;

  std::vector<OperatorId> out;
  for (const auto& op : comp.operators()) {
    if (!can_fire(comp, op.id, state.marking)) continue;
    auto nb = neighborhood(comp, op.id);
    if (std::none_of(nb.begin(), nb.end(), [&](DataId d) { return busy[d.index]; }))
      out.push_back(op.id);
  }
  auto since = [&](OperatorId op) { return state.enabled_since.at(op.index).value_or(state.step); };
  std::stable_sort(out.begin(), out.end(),
                   [&](OperatorId a, OperatorId b) { return since(a) < since(b); });
  return out;
}

namespace {

struct InFlight {
  OperatorId op;
  Duration end;
  FiringOutcome outcome;
  std::size_t schedule_index;
};

}  // namespace

SimulationResult simulate_concurrent(const Composition& comp, const ExecutionState& initial,
                                     const ProcessRegistry& reg, const DurationModel& durations,
                                     RunLimits limits) {
  SimulationResult result;
  ExecutionState& state = result.run.final_state;
  state = initial;
  refresh_enabled(comp, state);

  std::vector<InFlight> running;
  std::size_t started = 0;
  Duration now(0);

  auto running_ids = [&] {
    std::vector<OperatorId> ids;
    for (const auto& r : running) ids.push_back(r.op);
    return ids;
  };

  while (true) {
    while (started < limits.max_steps) {
      auto ids = running_ids();
      auto startable = startable_set(comp, state, ids);
      if (startable.empty()) break;
      OperatorId op = startable.front();
      FiringOutcome outcome = evaluate(comp, op, state, reg);
      Duration end = now + durations.of(op);
      result.schedule.push_back(ScheduleEntry{now, end, op, {}});
      running.push_back(InFlight{op, end, std::move(outcome), result.schedule.size() - 1});
      ++started;
    }
    result.events.push_back(EventPoint{now, state, running_ids()});
    if (running.empty()) break;

    now = std::min_element(running.begin(), running.end(),
                           [](const InFlight& a, const InFlight& b) { return a.end < b.end; })
              ->end;
    auto done = std::stable_partition(running.begin(), running.end(),
                                      [&](const InFlight& r) { return r.end != now; });
    std::vector<InFlight> finished(std::make_move_iterator(done),
                                   std::make_move_iterator(running.end()));
    running.erase(done, running.end());
    std::sort(finished.begin(), finished.end(),
              [](const InFlight& a, const InFlight& b) { return a.op < b.op; });
    for (const auto& f : finished) {
      TraceEvent event = commit(comp, f.op, f.outcome, state, /*refresh=*/false);
      result.schedule[f.schedule_index].event = event;
      result.run.trace.push_back(std::move(event));
    }
    refresh_enabled(comp, state);
  }

  result.run.converged = enabled_set(comp, state).empty();
  result.run.steps_taken = result.run.trace.size();
  std::stable_sort(result.schedule.begin(), result.schedule.end(),
                   [](const ScheduleEntry& a, const ScheduleEntry& b) {
                     if (a.start != b.start) return a.start < b.start;
                     return a.op < b.op;
                   });
  return result;
}

std::string format_schedule(const Composition& comp, const Schedule& schedule) {
  std::string out;
  for (const auto& e : schedule) {
    out += format_duration(e.start);
    out += '\t';
    out += format_duration(e.end);
    out += '\t';
    out += comp.op(e.op).name;
    out += '\t';
    out += format_bindings(comp, e.event.writes);
    out += '\n';
  }
  return out;
}

}  // namespace flow
