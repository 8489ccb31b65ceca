#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flow/composition.hpp"
#include "flow/process_registry.hpp"
#include "flow/state.hpp"
#include "flow/value.hpp"

namespace flow {

/// Values written and token states changed by one firing. Entries only cover
/// touched data; keys of `values_written` are outputs of the operator.
struct FiringOutcome {
  std::vector<std::pair<DataId, Value>> reads;
  std::vector<std::pair<DataId, Value>> values_written;
  std::vector<std::pair<DataId, TokenState>> marking_after;
};

/// One firing record. `reads` and `writes` are in data declaration order;
/// the markings are complete.
struct TraceEvent {
  std::size_t step = 0;
  OperatorId op;
  std::vector<std::pair<DataId, Value>> reads;
  std::vector<std::pair<DataId, Value>> writes;
  std::vector<TokenState> marking_before;
  std::vector<TokenState> marking_after;
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// `{name=value,...}` in the given order.
std::string format_bindings(const Composition& comp,
                            std::span<const std::pair<DataId, Value>> bindings);

/// Firing predicate. General kinds need every input marked, one input New
/// and no output New. Merge drops the "every input marked" clause, synchrone
/// needs every input New, and an operator without inputs only checks its
/// outputs.
bool can_fire(const Composition& comp, OperatorId op, std::span<const TokenState> marking);

Value eval_less_than(const Value& a, const Value& b);

/// Value written by the firing that follows `exec_count_before` firings.
Value eval_increment(std::size_t exec_count_before);

/// Routes `v` to the if-output (cond true) or else-output, marks it New and
/// both inputs Old. The untaken output is not touched.
FiringOutcome eval_ifelse(const OperatorSpec& op, const Value& v, const Value& cond);

/// Forwards the New-marked input; input 0 wins when both are New.
/// Throws NoNewToken when neither is New.
FiringOutcome eval_merge(const OperatorSpec& op, const Value& v0, const Value& v1,
                         TokenState m0, TokenState m1);

std::pair<Value, Value> eval_sync(const Value& v0, const Value& v1);

/// Runs a registered process and checks its result has `output_arity`
/// values. Throws UnknownProcess or OutputArityMismatch.
std::vector<Value> apply_user_process(const ProcessRegistry& reg, std::string_view name,
                                      std::span<const Value> inputs, std::size_t exec_count,
                                      std::size_t output_arity);

/// Throws UnknownProcess for the first process operator whose function the
/// registry cannot resolve.
void check_processes(const Composition& comp, const ProcessRegistry& reg);

/// Inputs become Old, outputs New, everything else unchanged.
std::vector<TokenState> update_general(const Composition& comp, OperatorId op,
                                       std::span<const TokenState> marking);

/// Computes what firing `op` would do without touching `state`.
/// Throws NotEnabled or any evaluation error.
FiringOutcome evaluate(const Composition& comp, OperatorId op, const ExecutionState& state,
                       const ProcessRegistry& reg);

/// Applies an outcome: stores values, updates marking, bumps the operator's
/// exec count and the step, and (unless batching) refreshes enabled_since.
TraceEvent commit(const Composition& comp, OperatorId op, const FiringOutcome& outcome,
                  ExecutionState& state, bool refresh = true);

/// Atomic firing: on error `state` is untouched and the error propagates.
std::pair<ExecutionState, TraceEvent> fire(const Composition& comp, OperatorId op,
                                           const ExecutionState& state,
                                           const ProcessRegistry& reg);

}  // namespace flow
