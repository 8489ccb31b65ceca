#include "flow/sequential.hpp"

namespace flow {

std::vector<OperatorId> enabled_set(const Composition& comp, const ExecutionState& state) {
  std::vector<OperatorId> out;
  for (const auto& op : comp.operators())
    if (can_fire(comp, op.id, state.marking)) out.push_back(op.id);
  return out;
}

std::optional<OperatorId> select_next(const Composition& comp, const ExecutionState& state) {
  std::optional<OperatorId> best;
  std::size_t best_since = 0;
  for (OperatorId op : enabled_set(comp, state)) {
    // A missing entry means the caller never refreshed; treat as enabled now.
    std::size_t since = state.enabled_since.at(op.index).value_or(state.step);
    if (!best || since < best_since) {
      best = op;
      best_since = since;
    }
  }
  return best;
}

std::optional<std::pair<ExecutionState, TraceEvent>> step(const Composition& comp,
                                                          const ExecutionState& state,
                                                          const ProcessRegistry& reg) {
  auto next = select_next(comp, state);
  if (!next) return std::nullopt;
  return fire(comp, *next, state, reg);
}

RunResult run_to_convergence(const Composition& comp, ExecutionState initial,
                             const ProcessRegistry& reg, RunLimits limits) {
  RunResult result;
  result.final_state = std::move(initial);
  while (true) {
    auto next = select_next(comp, result.final_state);
    if (!next) {
      result.converged = true;
      break;
    }
    if (result.trace.size() >= limits.max_steps) break;
    FiringOutcome outcome = evaluate(comp, *next, result.final_state, reg);
    result.trace.push_back(commit(comp, *next, outcome, result.final_state));
  }
  result.steps_taken = result.trace.size();
  return result;
}

}  // namespace flow
