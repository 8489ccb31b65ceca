// Shared helpers for the unit and acceptance suites: independent oracles,
// random composition generators and a small process runner for the CLI.
#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "flow/composition.hpp"
#include "flow/dsl.hpp"
#include "flow/operators.hpp"
#include "flow/process_registry.hpp"
#include "flow/state.hpp"

namespace testing_support {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string pattern_path(const std::string& file) {
  return std::string(FLOW_PATTERNS_DIR) + "/" + file;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI with `args` (already shell-safe). Stderr is dropped unless
// `with_stderr` folds it into `out`.
inline CliResult run_cli(const std::string& args, bool with_stderr = false) {
  std::string cmd = std::string(FLOW_CLI_PATH) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Imperative reading of the loop listing:
//   for (int i = 1; i < bound; i++) seed = process(seed);
//   result = seed;
inline double loop_oracle(const std::function<double(double)>& process, int bound, double seed) {
  for (int i = 1; i < bound; i++) seed = process(seed);
  return seed;
}

// Wiring of the two reference nets written out by hand, as index sets.
struct Wiring {
  std::vector<std::set<std::size_t>> inputs;
  std::vector<std::set<std::size_t>> outputs;
};

// Seven-data net; op2 reads d3 (the else branch).
inline Wiring c0_wiring() {
  return {{{0, 1}, {2}, {3}, {4, 5}}, {{2, 3}, {4}, {5}, {6}}};
}

// Ten-data net in the numbering incr, <, merge, sync, if/else, process.
inline Wiring c1_wiring() {
  return {{{}, {0, 1}, {3, 8}, {2, 4}, {5, 6}, {7}}, {{1}, {2}, {4}, {5, 6}, {7, 9}, {8}}};
}

inline std::multiset<std::pair<std::set<std::size_t>, std::set<std::size_t>>> wiring_of(
    const flow::Composition& comp) {
  std::multiset<std::pair<std::set<std::size_t>, std::set<std::size_t>>> out;
  for (const auto& op : comp.operators()) {
    std::set<std::size_t> in, o;
    for (auto d : op.inputs) in.insert(d.index);
    for (auto d : op.outputs) o.insert(d.index);
    out.insert({in, o});
  }
  return out;
}

inline std::multiset<std::pair<std::set<std::size_t>, std::set<std::size_t>>> wiring_of(
    const Wiring& w) {
  std::multiset<std::pair<std::set<std::size_t>, std::set<std::size_t>>> out;
  for (std::size_t i = 0; i < w.inputs.size(); ++i) out.insert({w.inputs[i], w.outputs[i]});
  return out;
}

// Registry with builtins plus fill1/fill2, which emit one or two numbers
// whatever they read. Lets random compositions use any process arity.
inline flow::ProcessRegistry test_registry() {
  auto reg = flow::ProcessRegistry::with_builtins();
  reg.add("fill1", [](std::span<const flow::Value>, std::size_t n) {
    return std::vector<flow::Value>{flow::Value::number(static_cast<double>(n))};
  });
  reg.add("fill2", [](std::span<const flow::Value>, std::size_t n) {
    return std::vector<flow::Value>{flow::Value::number(static_cast<double>(n)),
                                    flow::Value::number(-1)};
  });
  return reg;
}

inline std::vector<std::string> pick_distinct(std::mt19937& rng, std::vector<std::string> pool,
                                              std::size_t n) {
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(n);
  return pool;
}

// Random valid composition with at most `max_data` data and `max_ops`
// operators, all with unsorted data.
inline flow::Composition random_composition(std::mt19937& rng, std::size_t max_data = 6,
                                            std::size_t max_ops = 4) {
  std::uniform_int_distribution<std::size_t> nd(1, max_data), no(1, max_ops);
  std::size_t n_data = nd(rng);
  std::vector<flow::DataDecl> data;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n_data; ++i) {
    names.push_back("d" + std::to_string(i));
    data.push_back({names.back(), flow::ValueSort::Any});
  }

  const std::array kinds = {flow::OperatorKind::Process, flow::OperatorKind::IfElse,
                            flow::OperatorKind::Merge,   flow::OperatorKind::Sync,
                            flow::OperatorKind::Increment, flow::OperatorKind::LessThan};
  std::vector<flow::OperatorDecl> ops;
  std::size_t n_ops = no(rng);
  for (std::size_t i = 0; i < n_ops; ++i) {
    flow::OperatorDecl op;
    op.name = "op" + std::to_string(i);
    // Retry until the kind fits in the available data.
    for (int attempt = 0; attempt < 50; ++attempt) {
      op.kind = kinds[std::uniform_int_distribution<std::size_t>(0, kinds.size() - 1)(rng)];
      auto arity = flow::arity_of(op.kind);
      std::size_t n_in = arity.inputs ? *arity.inputs
                                      : std::uniform_int_distribution<std::size_t>(0, 2)(rng);
      std::size_t n_out = arity.outputs ? *arity.outputs
                                        : std::uniform_int_distribution<std::size_t>(1, 2)(rng);
      if (n_in + n_out > n_data) continue;
      auto chosen = pick_distinct(rng, names, n_in + n_out);
      op.inputs.assign(chosen.begin(), chosen.begin() + static_cast<long>(n_in));
      op.outputs.assign(chosen.begin() + static_cast<long>(n_in), chosen.end());
      op.process = op.kind == flow::OperatorKind::Process ? "fill" + std::to_string(n_out) : "";
      ops.push_back(op);
      break;
    }
  }
  return flow::Composition::build(std::move(data), std::move(ops));
}

// Random marking with values shaped for the special operators: if/else
// conditions are booleans, everything else numbers.
inline flow::ExecutionState random_state(std::mt19937& rng, const flow::Composition& comp) {
  std::set<std::size_t> conditions;
  for (const auto& op : comp.operators())
    if (op.kind == flow::OperatorKind::IfElse) conditions.insert(op.inputs[1].index);

  flow::InitialMarking marks;
  flow::InitialValues values;
  std::uniform_int_distribution<int> m(0, 2), v(-5, 5);
  for (const auto& d : comp.data()) {
    auto mark = static_cast<flow::TokenState>(m(rng));
    marks[d.id] = mark;
    if (mark == flow::TokenState::Void) continue;
    values[d.id] = conditions.count(d.id.index) ? flow::Value::boolean(v(rng) > 0)
                                                : flow::Value::number(v(rng));
  }
  auto state = flow::initial_state(comp, marks, values);
  std::uniform_int_distribution<std::size_t> count(0, 5);
  for (auto& c : state.exec_counts) c = count(rng);
  return state;
}

// Empty when `after` is a legal result of firing `op` from `before`:
// untouched data keep marking and value, inputs are consumed (merge: only the
// New one), outputs are New (if/else: exactly one).
inline std::string frame_violation(const flow::Composition& comp, flow::OperatorId op,
                                   const flow::ExecutionState& before,
                                   const flow::ExecutionState& after) {
  using flow::TokenState;
  const auto& spec = comp.op(op);
  auto in_list = [](const std::vector<flow::DataId>& v, flow::DataId d) {
    return std::find(v.begin(), v.end(), d) != v.end();
  };
  auto changed = [&](flow::DataId d) {
    return before.mark(d) != after.mark(d) || !(before.value(d) == after.value(d));
  };

  for (const auto& d : comp.data()) {
    if (in_list(spec.inputs, d.id) || in_list(spec.outputs, d.id)) continue;
    if (changed(d.id)) return "untouched data " + d.name + " changed";
  }
  for (const auto& other : comp.operators()) {
    std::size_t expect = before.exec_counts[other.id.index] + (other.id == op ? 1 : 0);
    if (after.exec_counts[other.id.index] != expect) return "exec count of " + other.name;
  }
  if (after.step != before.step + 1) return "step not advanced";

  switch (spec.kind) {
    case flow::OperatorKind::IfElse: {
      for (auto d : spec.inputs)
        if (after.mark(d) != TokenState::Old) return "if/else input not Old";
      int taken = 0;
      for (auto d : spec.outputs) {
        if (!changed(d)) continue;
        if (after.mark(d) != TokenState::New) return "if/else output changed but not New";
        ++taken;
      }
      // Re-writing the same value to an already-Old output looks unchanged
      // by value; count by marking instead.
      int marked_new = 0;
      for (auto d : spec.outputs) marked_new += after.mark(d) == TokenState::New;
      if (marked_new != 1 || taken > 1) return "if/else must mark exactly one output New";
      return "";
    }
    case flow::OperatorKind::Merge: {
      int demoted = 0;
      for (auto d : spec.inputs) {
        if (before.mark(d) == TokenState::New && after.mark(d) == TokenState::Old)
          ++demoted;
        else if (changed(d))
          return "merge changed a non-winning input";
      }
      if (demoted != 1) return "merge must demote exactly one input";
      if (after.mark(spec.outputs[0]) != TokenState::New) return "merge output not New";
      return "";
    }
    default:
      for (auto d : spec.inputs)
        if (after.mark(d) != TokenState::Old) return "input not Old";
      for (auto d : spec.outputs)
        if (after.mark(d) != TokenState::New) return "output not New";
      return "";
  }
}

}  // namespace testing_support
