#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "flow/composition.hpp"
#include "flow/operators.hpp"
#include "flow/process_registry.hpp"
#include "flow/state.hpp"

namespace flow {

struct RunLimits {
  std::size_t max_steps = 100000;
};

struct RunResult {
  ExecutionState final_state;
  std::vector<TraceEvent> trace;
  bool converged = false;  // false means the step limit stopped the run
  std::size_t steps_taken = 0;
};

/// Operators whose firing predicate holds, in declaration order.
std::vector<OperatorId> enabled_set(const Composition& comp, const ExecutionState& state);

/// Longest-waiting enabled operator (smallest enabled_since), ties to the
/// lowest declaration index. Empty at convergence.
std::optional<OperatorId> select_next(const Composition& comp, const ExecutionState& state);

/// Fires the selected operator. Empty at convergence.
std::optional<std::pair<ExecutionState, TraceEvent>> step(const Composition& comp,
                                                          const ExecutionState& state,
                                                          const ProcessRegistry& reg);

/// Steps until convergence or `limits.max_steps` firings. Hitting the limit
/// is reported through `converged == false` with the partial trace; firing
/// errors propagate.
RunResult run_to_convergence(const Composition& comp, ExecutionState initial,
                             const ProcessRegistry& reg, RunLimits limits = {});

}  // namespace flow
