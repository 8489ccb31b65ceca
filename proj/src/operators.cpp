#include "flow/operators.hpp"

#include <algorithm>

#include "flow/error.hpp"

namespace flow {

std::string format_bindings(const Composition& comp,
                            std::span<const std::pair<DataId, Value>> bindings) {
  std::string out = "{";
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    if (i) out += ',';
    out += comp.data(bindings[i].first).name;
    out += '=';
    out += format_value(bindings[i].second);
  }
  out += '}';
  return out;
}

bool can_fire(const Composition& comp, OperatorId op, std::span<const TokenState> marking) {
  const auto& spec = comp.op(op);
  auto mark = [&](DataId d) { return marking[d.index]; };
  auto is_new = [&](DataId d) { return mark(d) == TokenState::New; };

  // No kind may overwrite an unconsumed token.
  if (std::any_of(spec.outputs.begin(), spec.outputs.end(), is_new)) return false;
  if (spec.inputs.empty()) return true;

  const auto& in = spec.inputs;
  switch (spec.kind) {
    case OperatorKind::Merge:
      return std::any_of(in.begin(), in.end(), is_new);
    case OperatorKind::Sync:
      return std::all_of(in.begin(), in.end(), is_new);
    default:
      return std::all_of(in.begin(), in.end(),
                         [&](DataId d) { return mark(d) != TokenState::Void; }) &&
             std::any_of(in.begin(), in.end(), is_new);
  }
}

Value eval_less_than(const Value& a, const Value& b) {
  if (!a.is_number() || !b.is_number())
    throw Error(ErrorKind::TypeMismatch, "< compares numbers, got " +
                                             std::string(a.sort_name()) + " and " +
                                             std::string(b.sort_name()));
  return Value::boolean(a.as_number() < b.as_number());
}

Value eval_increment(std::size_t exec_count_before) {
  return Value::number(static_cast<double>(exec_count_before + 1));
}

FiringOutcome eval_ifelse(const OperatorSpec& op, const Value& v, const Value& cond) {
  if (!cond.is_boolean())
    throw Error(ErrorKind::TypeMismatch,
                "if/else condition must be bool, got " + std::string(cond.sort_name()));
  DataId taken = cond.as_boolean() ? op.outputs.at(0) : op.outputs.at(1);
  FiringOutcome out;
  out.values_written.emplace_back(taken, v);
  for (DataId d : op.inputs) out.marking_after.emplace_back(d, TokenState::Old);
  out.marking_after.emplace_back(taken, TokenState::New);
  return out;
}

FiringOutcome eval_merge(const OperatorSpec& op, const Value& v0, const Value& v1,
                         TokenState m0, TokenState m1) {
  std::size_t winner;
  if (m0 == TokenState::New)
    winner = 0;
  else if (m1 == TokenState::New)
    winner = 1;
  else
    throw Error(ErrorKind::NoNewToken, "merge '" + op.name + "' has no New input");

  FiringOutcome out;
  out.values_written.emplace_back(op.outputs.at(0), winner == 0 ? v0 : v1);
  out.marking_after.emplace_back(op.inputs.at(winner), TokenState::Old);
  out.marking_after.emplace_back(op.outputs.at(0), TokenState::New);
  return out;
}

std::pair<Value, Value> eval_sync(const Value& v0, const Value& v1) { return {v0, v1}; }

std::vector<Value> apply_user_process(const ProcessRegistry& reg, std::string_view name,
                                      std::span<const Value> inputs, std::size_t exec_count,
                                      std::size_t output_arity) {
  ProcessFn fn = reg.resolve(name);
  std::vector<Value> out = fn(inputs, exec_count);
  if (out.size() != output_arity)
    throw Error(ErrorKind::OutputArityMismatch,
                "process '" + std::string(name) + "' returned " + std::to_string(out.size()) +
                    " values for " + std::to_string(output_arity) + " outputs");
  return out;
}

void check_processes(const Composition& comp, const ProcessRegistry& reg) {
  for (const auto& op : comp.operators()) {
    if (op.kind != OperatorKind::Process) continue;
    try {
      reg.resolve(op.process);
    } catch (const Error&) {
      throw Error(ErrorKind::UnknownProcess,
                  "operator '" + op.name + "' uses unknown process '" + op.process + "'");
    }
  }
}

std::vector<TokenState> update_general(const Composition& comp, OperatorId op,
                                       std::span<const TokenState> marking) {
  std::vector<TokenState> next(marking.begin(), marking.end());
  const auto& spec = comp.op(op);
  for (DataId d : spec.inputs) next[d.index] = TokenState::Old;
  for (DataId d : spec.outputs) next[d.index] = TokenState::New;
  return next;
}

namespace {

void general_marking(const OperatorSpec& spec, FiringOutcome& out) {
  for (DataId d : spec.inputs) out.marking_after.emplace_back(d, TokenState::Old);
  for (DataId d : spec.outputs) out.marking_after.emplace_back(d, TokenState::New);
}

void write_positional(const OperatorSpec& spec, std::vector<Value> values, FiringOutcome& out) {
  for (std::size_t i = 0; i < values.size(); ++i)
    out.values_written.emplace_back(spec.outputs[i], std::move(values[i]));
}

bool by_data(const std::pair<DataId, Value>& a, const std::pair<DataId, Value>& b) {
  return a.first < b.first;
}

}  // namespace

FiringOutcome evaluate(const Composition& comp, OperatorId op, const ExecutionState& state,
                       const ProcessRegistry& reg) {
  const auto& spec = comp.op(op);
  if (!can_fire(comp, op, state.marking))
    throw Error(ErrorKind::NotEnabled, "operator '" + spec.name + "' is not enabled");

  auto in = [&](std::size_t port) -> const Value& { return state.value(spec.inputs.at(port)); };
  auto in_mark = [&](std::size_t port) { return state.mark(spec.inputs.at(port)); };
  const std::size_t count = state.exec_counts.at(op.index);

  FiringOutcome out;
  switch (spec.kind) {
    case OperatorKind::Process: {
      std::vector<Value> args;
      for (DataId d : spec.inputs) args.push_back(state.value(d));
      write_positional(spec, apply_user_process(reg, spec.process, args, count, spec.outputs.size()),
                       out);
      general_marking(spec, out);
      break;
    }
    case OperatorKind::IfElse:
      out = eval_ifelse(spec, in(0), in(1));
      break;
    case OperatorKind::Merge:
      out = eval_merge(spec, in(0), in(1), in_mark(0), in_mark(1));
      break;
    case OperatorKind::Sync: {
      auto [a, b] = eval_sync(in(0), in(1));
      write_positional(spec, {std::move(a), std::move(b)}, out);
      general_marking(spec, out);
      break;
    }
    case OperatorKind::Increment:
      write_positional(spec, {eval_increment(count)}, out);
      general_marking(spec, out);
      break;
    case OperatorKind::LessThan:
      write_positional(spec, {eval_less_than(in(0), in(1))}, out);
      general_marking(spec, out);
      break;
  }

  for (const auto& [d, v] : out.values_written) {
    const auto& node = comp.data(d);
    if (v.is_absent())
      throw Error(ErrorKind::TypeMismatch,
                  "operator '" + spec.name + "' wrote no value to '" + node.name + "'");
    if (!v.matches(node.sort))
      throw Error(ErrorKind::TypeMismatch, "operator '" + spec.name + "' wrote " +
                                               std::string(v.sort_name()) + " to " +
                                               std::string(to_string(node.sort)) + " data '" +
                                               node.name + "'");
  }

  for (DataId d : spec.inputs)
    if (!state.value(d).is_absent()) out.reads.emplace_back(d, state.value(d));
  std::sort(out.reads.begin(), out.reads.end(), by_data);
  std::sort(out.values_written.begin(), out.values_written.end(), by_data);
  return out;
}

TraceEvent commit(const Composition& comp, OperatorId op, const FiringOutcome& outcome,
                  ExecutionState& state, bool refresh) {
  TraceEvent event;
  event.step = state.step;
  event.op = op;
  event.reads = outcome.reads;
  event.writes = outcome.values_written;
  event.marking_before = state.marking;

  for (const auto& [d, v] : outcome.values_written) state.values.at(d.index) = v;
  for (const auto& [d, m] : outcome.marking_after) state.marking.at(d.index) = m;
  ++state.exec_counts.at(op.index);
  ++state.step;
  if (refresh) refresh_enabled(comp, state);

  event.marking_after = state.marking;
  return event;
}

std::pair<ExecutionState, TraceEvent> fire(const Composition& comp, OperatorId op,
                                           const ExecutionState& state,
                                           const ProcessRegistry& reg) {
  FiringOutcome outcome = evaluate(comp, op, state, reg);
  ExecutionState next = state;
  TraceEvent event = commit(comp, op, outcome, next);
  return {std::move(next), std::move(event)};
}

}  // namespace flow
