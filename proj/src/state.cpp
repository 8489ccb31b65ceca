#include "flow/state.hpp"

#include "flow/error.hpp"
#include "flow/operators.hpp"

namespace flow {

ExecutionState initial_state(const Composition& comp, const InitialMarking& marks,
                             const InitialValues& values) {
  const std::size_t n = comp.data_count();
  ExecutionState state;
  state.marking.assign(n, TokenState::Void);
  state.values.assign(n, Value{});
  state.exec_counts.assign(comp.operator_count(), 0);
  state.enabled_since.assign(comp.operator_count(), std::nullopt);

  auto check_id = [&](DataId d) {
    if (d.index >= n)
      throw Error(ErrorKind::UnknownDataReference,
                  "data index " + std::to_string(d.index) + " out of range");
  };

  for (const auto& [d, mark] : marks) {
    check_id(d);
    state.marking[d.index] = mark;
  }
  for (const auto& [d, value] : values) {
    check_id(d);
    const auto& node = comp.data(d);
    if (value.is_absent()) continue;
    if (state.marking[d.index] == TokenState::Void)
      throw Error(ErrorKind::ValueWithoutToken, "data '" + node.name + "' has a value but no token");
    if (!value.matches(node.sort))
      throw Error(ErrorKind::TypeMismatch, "data '" + node.name + "' is declared " +
                                               std::string(to_string(node.sort)) + ", got " +
                                               std::string(value.sort_name()));
    state.values[d.index] = value;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (state.marking[i] != TokenState::Void && state.values[i].is_absent())
      throw Error(ErrorKind::ValueMissingForToken,
                  "data '" + comp.data(DataId{i}).name + "' holds a token but no value");
  }

  refresh_enabled(comp, state);
  return state;
}

void refresh_enabled(const Composition& comp, ExecutionState& state) {
  for (const auto& op : comp.operators()) {
    auto& since = state.enabled_since[op.id.index];
    if (!can_fire(comp, op.id, state.marking))
      since.reset();
    else if (!since)
      since = state.step;
  }
}

}  // namespace flow
