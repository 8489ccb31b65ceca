#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "flow/composition.hpp"
#include "flow/value.hpp"

namespace flow {

/// Marking, values and scheduling bookkeeping at step `step`.
/// All vectors are indexed by DataId / OperatorId.
struct ExecutionState {
  std::vector<TokenState> marking;
  std::vector<Value> values;
  std::vector<std::size_t> exec_counts;
  // Earliest step since which the operator has been continuously enabled;
  // empty while it is disabled.
  std::vector<std::optional<std::size_t>> enabled_since;
  std::size_t step = 0;

  TokenState mark(DataId d) const { return marking.at(d.index); }
  const Value& value(DataId d) const { return values.at(d.index); }

  friend bool operator==(const ExecutionState&, const ExecutionState&) = default;
};

using InitialMarking = std::map<DataId, TokenState>;
using InitialValues = std::map<DataId, Value>;

/// Builds the state at step 0. Unlisted data are Void/Absent.
/// Throws ValueMissingForToken, ValueWithoutToken, UnknownDataReference or
/// TypeMismatch (value against the declared sort).
ExecutionState initial_state(const Composition& comp, const InitialMarking& marks,
                             const InitialValues& values);

/// Recomputes enabled_since against the current marking: newly enabled
/// operators start waiting at `state.step`, disabled ones are cleared.
void refresh_enabled(const Composition& comp, ExecutionState& state);

}  // namespace flow
