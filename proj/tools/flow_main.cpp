// Command-line front end for .flow compositions.
//
//   flow validate FILE
//   flow run FILE [--max-steps N] [--trace PATH|-] [--quiet] [--seed-override name=value]...
//   flow step FILE [--steps N] [--seed-override name=value]...
//   flow simulate FILE [--max-steps N] [--trace PATH|-] [--quiet] [--seed-override ...]
//   flow graph FILE [--seed-override ...]
//
// Exit codes: 0 success, 1 validation or runtime error, 2 step limit reached.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flow/concurrent.hpp"
#include "flow/dot.hpp"
#include "flow/dsl.hpp"
#include "flow/error.hpp"
#include "flow/operators.hpp"
#include "flow/process_registry.hpp"
#include "flow/sequential.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitStepLimit = 2;

struct Options {
  std::string input;
  std::size_t max_steps = flow::RunLimits{}.max_steps;
  std::size_t steps = 1;
  std::string trace = "-";
  bool quiet = false;
  std::vector<std::string> overrides;
};

flow::CompositionDocument load(const Options& opt, const flow::ProcessRegistry& reg) {
  std::ifstream in(opt.input, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + opt.input + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  auto doc = flow::parse_composition(buf.str());
  for (const auto& o : opt.overrides) flow::apply_seed_override(doc, o);
  flow::check_processes(doc.composition, reg);
  return doc;
}

void write_trace(const Options& opt, const std::string& text) {
  if (opt.trace == "-") {
    if (!opt.quiet) std::cout << text;
    return;
  }
  std::ofstream out(opt.trace, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + opt.trace + "'");
  out << text;
}

int finish(bool converged, std::size_t steps) {
  if (converged) return kExitOk;
  std::cerr << "step limit reached after " << steps << " firings\n";
  return kExitStepLimit;
}

int cmd_validate(const Options& opt, const flow::ProcessRegistry& reg) {
  auto doc = load(opt, reg);
  flow::seed_state(doc);
  std::cout << "ok\n";
  return kExitOk;
}

int cmd_run(const Options& opt, const flow::ProcessRegistry& reg) {
  auto doc = load(opt, reg);
  const auto& comp = doc.composition;
  auto result = flow::run_to_convergence(comp, flow::seed_state(doc), reg, {opt.max_steps});
  write_trace(opt, flow::serialize_trace(comp, result.trace));
  std::cout << flow::format_summary(comp, result.final_state) << "\n";
  return finish(result.converged, result.steps_taken);
}

int cmd_step(const Options& opt, const flow::ProcessRegistry& reg) {
  auto doc = load(opt, reg);
  const auto& comp = doc.composition;
  auto state = flow::seed_state(doc);
  for (std::size_t i = 0; i < opt.steps; ++i) {
    auto next = flow::step(comp, state, reg);
    if (!next) break;
    std::cout << flow::format_event(comp, next->second) << "\n";
    state = std::move(next->first);
  }
  return kExitOk;
}

int cmd_simulate(const Options& opt, const flow::ProcessRegistry& reg) {
  auto doc = load(opt, reg);
  const auto& comp = doc.composition;
  auto sim = flow::simulate_concurrent(comp, flow::seed_state(doc), reg, doc.durations,
                                       {opt.max_steps});
  write_trace(opt, flow::serialize_trace(comp, sim.run.trace));
  std::cout << flow::format_summary(comp, sim.run.final_state) << "\n";
  std::cout << "schedule:\n" << flow::format_schedule(comp, sim.schedule);
  return finish(sim.run.converged, sim.schedule.size());
}

int cmd_graph(const Options& opt, const flow::ProcessRegistry& reg) {
  auto doc = load(opt, reg);
  auto state = flow::seed_state(doc);
  std::cout << flow::to_dot(doc.composition, std::span<const flow::TokenState>(state.marking));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run dataflow compositions described in .flow files"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", opt.input, "composition file")->required();
    sub->add_option("--seed-override", opt.overrides, "replace an init literal (name=value)");
  };
  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--max-steps", opt.max_steps, "firing limit")->check(CLI::PositiveNumber);
    sub->add_option("--trace", opt.trace, "trace destination, - for stdout");
    sub->add_flag("--quiet", opt.quiet, "print the final summary only");
  };

  auto* validate = app.add_subcommand("validate", "check a composition file");
  add_common(validate);
  auto* run = app.add_subcommand("run", "run sequentially until convergence");
  add_common(run);
  add_run_flags(run);
  auto* step = app.add_subcommand("step", "fire a fixed number of steps");
  add_common(step);
  step->add_option("--steps", opt.steps, "number of firings")->check(CLI::NonNegativeNumber);
  auto* simulate = app.add_subcommand("simulate", "virtual-time concurrent run");
  add_common(simulate);
  add_run_flags(simulate);
  auto* graph = app.add_subcommand("graph", "print the composition as DOT");
  add_common(graph);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the generic error code; --help stays 0.
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  const auto reg = flow::ProcessRegistry::with_builtins();
  try {
    if (validate->parsed()) return cmd_validate(opt, reg);
    if (run->parsed()) return cmd_run(opt, reg);
    if (step->parsed()) return cmd_step(opt, reg);
    if (simulate->parsed()) return cmd_simulate(opt, reg);
    if (graph->parsed()) return cmd_graph(opt, reg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
