// Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
// exact (integer counts, exact values, byte-identical text); no tolerances.

#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "flow/concurrent.hpp"
#include "flow/dsl.hpp"
#include "flow/error.hpp"
#include "flow/patterns.hpp"
#include "flow/sequential.hpp"
#include "support.hpp"

using namespace flow;
using namespace testing_support;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (!pass) detail << "; ";
    else detail.str("");
    pass = false;
    detail << why;
  }
};

std::string sh(const std::string& s) { return "'" + s + "'"; }

std::vector<std::string> fired_ops(const std::string& trace) {
  std::vector<std::string> ops;
  for (const auto& line : lines_of(trace)) {
    if (line.rfind("step=", 0) != 0) continue;
    auto at = line.find(" op=") + 4;
    ops.push_back(line.substr(at, line.find(' ', at) - at));
  }
  return ops;
}

std::size_t count(const std::vector<std::string>& v, const std::string& x) {
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), x));
}

std::string summary_entry(const std::string& name, double v, char mark) {
  return " " + name + "=" + format_number(v) + "(" + mark + ")";
}

Outcome loop_iteration_count() {
  Outcome o;
  auto r = run_cli("run " + sh(pattern_path("c1_loop.flow")));
  auto ops = fired_ops(r.out);
  if (r.exit_code != 0) o.fail("run exited " + std::to_string(r.exit_code));
  if (count(ops, "process1") != 9) o.fail("process1 fired " + std::to_string(count(ops, "process1")) + "x");
  if (r.out.find(summary_entry("d9", 9, 'N')) == std::string::npos) o.fail("d9 != 9");

  auto add1 = [](double x) { return x + 1; };
  int sweep_ok = 0;
  for (int k = 1; k <= 20; ++k) {
    auto rk = run_cli("run " + sh(pattern_path("c1_loop.flow")) + " --seed-override d0=" + std::to_string(k));
    auto ok = rk.exit_code == 0 && count(fired_ops(rk.out), "process1") == static_cast<std::size_t>(k - 1) &&
              rk.out.find(summary_entry("d9", loop_oracle(add1, k, 0), 'N')) != std::string::npos;
    if (ok) ++sweep_ok;
    else o.fail("sweep k=" + std::to_string(k));
  }
  if (o.pass) o.detail << "9 body firings, d9=9; sweep " << sweep_ok << "/20 match the imperative loop";
  return o;
}

Outcome loop_firing_order() {
  Outcome o;
  const std::map<std::string, std::string> label{{"merge", "Merge"},   {"incr", "Incr"},
                                                 {"lt", "<"},          {"sync", "Sync"},
                                                 {"ifelse", "If/else"}, {"process1", "Process1"}};
  const std::vector<std::string> expected{"Merge", "Incr", "<", "Sync", "Incr",
                                          "If/else", "<", "Process1", "Merge", "Sync"};
  auto r = run_cli("run " + sh(pattern_path("c1_loop.flow")));
  auto ops = fired_ops(r.out);
  std::vector<std::string> got;
  for (std::size_t i = 0; i < 10 && i < ops.size(); ++i) got.push_back(label.count(ops[i]) ? label.at(ops[i]) : ops[i]);

  for (std::size_t i = 0; i < expected.size(); ++i) {
    std::string g = i < got.size() ? got[i] : "<none>";
    if (g != expected[i]) o.fail("position " + std::to_string(i) + ": expected " + expected[i] + ", got " + g);
  }
  auto lines = lines_of(r.out);
  auto has = [&](std::size_t i, const std::string& s) {
    return i < lines.size() && lines[i].find(s) != std::string::npos;
  };
  if (!has(1, "writes={d1=1}") || !has(4, "writes={d1=2}")) o.fail("incr did not write 1 then 2");
  if (!has(2, "writes={d2=true}") || !has(6, "writes={d2=true}")) o.fail("< did not write true at steps 2 and 6");
  if (r.out != read_file(pattern_path("c1_loop.trace"))) o.fail("golden trace differs");
  if (o.pass) o.detail << "first 10 firings and captions match; golden identical";
  return o;
}

Outcome ifelse_exclusivity() {
  Outcome o;
  struct Case {
    std::string cond;
    std::vector<std::string> order;
    double result;
  };
  const double d1 = 5;
  const std::vector<Case> cases{{"true", {"ifelse", "process1", "merge"}, d1 + 1},
                                {"false", {"ifelse", "process2", "merge"}, d1 * 2}};
  for (const auto& c : cases) {
    auto r = run_cli("run " + sh(pattern_path("c0_ifelse.flow")) + " --seed-override d0=" + c.cond);
    auto ops = fired_ops(r.out);
    if (ops != c.order) o.fail("cond " + c.cond + ": wrong firing order");
    if (r.out.find(summary_entry("d6", c.result, 'N')) == std::string::npos)
      o.fail("cond " + c.cond + ": wrong result");
  }
  if (o.pass) o.detail << "true -> Process1 only (d6=6), false -> Process2 only (d6=10)";
  return o;
}

// Input marking pairs under which each kind may fire when no output is New.
const std::map<OperatorKind, std::set<std::string>>& allowed_pairs() {
  static const std::map<OperatorKind, std::set<std::string>> table{
      {OperatorKind::Process, {"ON", "NO", "NN"}},
      {OperatorKind::IfElse, {"ON", "NO", "NN"}},
      {OperatorKind::LessThan, {"ON", "NO", "NN"}},
      {OperatorKind::Merge, {"VN", "NV", "ON", "NO", "NN"}},
      {OperatorKind::Sync, {"NN"}},
  };
  return table;
}

Outcome predicate_truth_table() {
  Outcome o;
  using TS = TokenState;
  const TS all[] = {TS::Void, TS::Old, TS::New};
  auto code = [](TS t) { return std::string(1, token_code(t)); };

  std::size_t checked = 0;
  for (const auto& [kind, allowed] : allowed_pairs()) {
    std::size_t outs = kind == OperatorKind::IfElse || kind == OperatorKind::Sync ? 2 : 1;
    std::vector<DataDecl> data{{"a"}, {"b"}, {"x"}, {"y"}};
    std::vector<std::string> out_names{"x"};
    if (outs == 2) out_names.push_back("y");
    auto comp = Composition::build(data, {{"op", kind, kind == OperatorKind::Process ? "add" : "", {"a", "b"}, out_names}});
    for (TS a : all)
      for (TS b : all)
        for (TS out : all)
          for (std::size_t port = 0; port < outs; ++port) {
            std::vector<TS> m{a, b, TS::Void, TS::Void};
            m[2 + port] = out;
            bool expect = out != TS::New && allowed.count(code(a) + code(b)) > 0;
            if (can_fire(comp, OperatorId{0}, m) != expect)
              o.fail(std::string(to_string(kind)) + " " + code(a) + code(b) + "->" + code(out));
            ++checked;
          }
  }
  auto incr = Composition::build({{"x"}}, {{"i", OperatorKind::Increment, "", {}, {"x"}}});
  for (TS out : all) {
    std::vector<TS> m{out};
    if (can_fire(incr, OperatorId{0}, m) != (out != TS::New)) o.fail("incr ->" + code(out));
    ++checked;
  }

  // The three configurations of the execution-rule figure, on a plain process.
  auto proc = Composition::build({{"a"}, {"b"}, {"x"}}, {{"op", OperatorKind::Process, "add", {"a", "b"}, {"x"}}});
  std::vector<TS> left{TS::Void, TS::New, TS::Void}, center{TS::Old, TS::New, TS::Old},
      right{TS::New, TS::New, TS::New};
  if (can_fire(proc, OperatorId{0}, left) || !can_fire(proc, OperatorId{0}, center) ||
      can_fire(proc, OperatorId{0}, right))
    o.fail("figure configurations are not false/true/false");

  auto merge = Composition::build({{"a"}, {"b"}, {"x"}}, {{"m", OperatorKind::Merge, "", {"a", "b"}, {"x"}}});
  std::vector<TS> one_void{TS::Void, TS::New, TS::Void};
  if (!can_fire(merge, OperatorId{0}, one_void)) o.fail("merge refused a Void input");
  auto sync = Composition::build({{"a"}, {"b"}, {"x"}, {"y"}}, {{"s", OperatorKind::Sync, "", {"a", "b"}, {"x", "y"}}});
  std::vector<TS> not_new{TS::New, TS::Old, TS::Void, TS::Void};
  if (can_fire(sync, OperatorId{0}, not_new)) o.fail("sync fired with an Old input");

  if (o.pass) o.detail << checked << " combinations match the oracle table; figure configs false/true/false";
  return o;
}

Outcome frame_property() {
  Outcome o;
  std::mt19937 rng(500);
  auto reg = test_registry();
  std::size_t cases = 0, violations = 0;
  while (cases < 500) {
    auto comp = random_composition(rng, 6, 4);
    auto state = random_state(rng, comp);
    auto enabled = enabled_set(comp, state);
    if (enabled.empty()) continue;
    auto op = enabled[std::uniform_int_distribution<std::size_t>(0, enabled.size() - 1)(rng)];
    try {
      auto [after, event] = fire(comp, op, state, reg);
      ++cases;
      auto why = frame_violation(comp, op, state, after);
      if (!why.empty()) {
        ++violations;
        o.fail(comp.op(op).name + ": " + why);
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TypeMismatch) o.fail(std::string("unexpected error: ") + e.what());
    }
  }
  if (o.pass) o.detail << cases << " firings, " << violations << " violations";
  return o;
}

Outcome stalled_marking() {
  Outcome o;
  auto comp = build_c0_structure();
  using TS = TokenState;
  auto n = [](double x) { return Value::number(x); };
  auto state = initial_state(comp,
                             {{DataId{0}, TS::Old}, {DataId{1}, TS::Old}, {DataId{2}, TS::Old},
                              {DataId{3}, TS::Void}, {DataId{4}, TS::New}, {DataId{5}, TS::Void},
                              {DataId{6}, TS::Void}},
                             {{DataId{0}, n(1)}, {DataId{1}, n(2)}, {DataId{2}, n(3)}, {DataId{4}, n(4)}});
  auto run = run_to_convergence(comp, state, ProcessRegistry::with_builtins());
  if (!run.converged) o.fail("did not converge");
  if (!run.trace.empty()) o.fail(std::to_string(run.trace.size()) + " firings");
  if (!(run.final_state.marking == state.marking)) o.fail("marking changed");
  if (o.pass) o.detail << "converged with an empty trace";
  return o;
}

std::size_t overlapping_pairs(const Composition& comp, const Schedule& schedule) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < schedule.size(); ++i)
    for (std::size_t j = i + 1; j < schedule.size(); ++j) {
      const auto& a = schedule[i];
      const auto& b = schedule[j];
      if (!(a.start < b.end && b.start < a.end)) continue;
      auto na = neighborhood(comp, a.op), nb = neighborhood(comp, b.op);
      for (auto d : na)
        if (std::find(nb.begin(), nb.end(), d) != nb.end()) {
          ++bad;
          break;
        }
    }
  return bad;
}

Outcome concurrent_equivalence() {
  Outcome o;
  auto reg = ProcessRegistry::with_builtins();
  std::size_t runs = 0, events = 0;
  auto check = [&](const Composition& comp, const ExecutionState& s, const std::string& label) {
    auto seq = run_to_convergence(comp, s, reg);
    auto sim = simulate_concurrent(comp, s, reg);
    ++runs;
    if (!sim.run.converged) o.fail(label + ": no convergence");
    if (overlapping_pairs(comp, sim.schedule) != 0) o.fail(label + ": overlapping neighborhoods");
    if (!(sim.run.final_state.values == seq.final_state.values) ||
        sim.run.final_state.marking != seq.final_state.marking)
      o.fail(label + ": differs from sequential");
    for (const auto& ev : sim.events) {
      ++events;
      if (!startable_set(comp, ev.state, ev.running).empty())
        o.fail(label + ": idle startable operator at t=" + format_duration(ev.time));
    }
  };
  for (bool cond : {true, false}) {
    auto comp = build_ifelse_pattern(reg, "add1", "mul(2)").composition;
    check(comp,
          initial_state(comp, {{DataId{0}, TokenState::New}, {DataId{1}, TokenState::New}},
                        {{DataId{0}, Value::boolean(cond)}, {DataId{1}, Value::number(5)}}),
          std::string("C0 cond=") + (cond ? "true" : "false"));
  }
  auto loop = build_loop_pattern(reg, "add1").composition;
  for (int k = 1; k <= 12; ++k)
    check(loop,
          initial_state(loop, {{DataId{0}, TokenState::New}, {DataId{3}, TokenState::New}},
                        {{DataId{0}, Value::number(k)}, {DataId{3}, Value::number(0)}}),
          "C1 d0=" + std::to_string(k));
  if (o.pass) o.detail << runs << " runs, " << events << " event times, no overlap, matches sequential";
  return o;
}

Outcome determinism_roundtrip() {
  Outcome o;
  for (const char* file : {"c1_loop.flow", "c0_ifelse.flow"}) {
    auto first = run_cli("run " + sh(pattern_path(file)));
    for (int i = 0; i < 5; ++i)
      if (run_cli("run " + sh(pattern_path(file))).out != first.out) o.fail(std::string(file) + " output varies");
  }
  std::mt19937 rng(8);
  std::size_t ok = 0;
  for (int i = 0; i < 200; ++i) {
    CompositionDocument doc;
    doc.composition = random_composition(rng);
    for (const auto& d : doc.composition.data())
      if (rng() % 2) doc.init.push_back({d.id, Value::number(static_cast<double>(rng() % 100)), TokenState::New});
    try {
      auto back = parse_composition(emit_composition(doc));
      if (back.composition == doc.composition && back.init == doc.init) ++ok;
      else o.fail("composition " + std::to_string(i) + " changed");
    } catch (const Error& e) {
      o.fail("composition " + std::to_string(i) + ": " + e.what());
    }
  }
  if (o.pass) o.detail << "identical bytes over repeated runs; " << ok << "/200 round-trips";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    Outcome (*check)();
  };
  const Criterion criteria[] = {
      {1, "loop iteration count", loop_iteration_count},
      {2, "loop firing-order trace", loop_firing_order},
      {3, "if/else branch exclusivity", ifelse_exclusivity},
      {4, "firing-predicate truth table", predicate_truth_table},
      {5, "update-rule frame property", frame_property},
      {6, "stalled-marking convergence", stalled_marking},
      {7, "concurrent exclusion and equivalence", concurrent_equivalence},
      {8, "determinism and round-trip", determinism_roundtrip},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.title << " ("
              << o.detail.str() << ")\n";
  }
  std::cout << (8 - failed) << "/8 criteria passed\n";
  return failed == 0 ? 0 : 1;
}
