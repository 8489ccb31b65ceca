#include "flow/patterns.hpp"

#include "flow/error.hpp"

namespace flow {

namespace {

std::vector<DataDecl> numbered_data(std::size_t n) {
  std::vector<DataDecl> data;
  for (std::size_t i = 0; i < n; ++i) data.push_back({"d" + std::to_string(i), ValueSort::Any});
  return data;
}

void require(const ProcessRegistry& reg, const std::string& name) {
  reg.resolve(name);  // throws UnknownProcess
}

}  // namespace

PatternInstance build_ifelse_pattern(const ProcessRegistry& reg, const std::string& process1,
                                     const std::string& process2) {
  require(reg, process1);
  require(reg, process2);

  auto data = numbered_data(7);
  data[0].sort = ValueSort::Boolean;
  std::vector<OperatorDecl> ops = {
      {"ifelse", OperatorKind::IfElse, "", {"d1", "d0"}, {"d2", "d3"}},
      {"process1", OperatorKind::Process, process1, {"d2"}, {"d4"}},
      {"process2", OperatorKind::Process, process2, {"d3"}, {"d5"}},
      {"merge", OperatorKind::Merge, "", {"d4", "d5"}, {"d6"}},
  };
  PatternInstance p{Composition::build(std::move(data), std::move(ops)), {}};
  p.roles = {{"condition", DataId{0}}, {"value", DataId{1}}, {"result", DataId{6}}};
  return p;
}

PatternInstance build_loop_pattern(const ProcessRegistry& reg, const std::string& process) {
  require(reg, process);

  auto data = numbered_data(10);
  data[0].sort = ValueSort::Number;
  data[1].sort = ValueSort::Number;
  data[2].sort = ValueSort::Boolean;
  data[5].sort = ValueSort::Boolean;
  // Sync and merge come before incr: the waiting-time ties at the start of
  // the run and after the first comparison are settled by declaration order.
  std::vector<OperatorDecl> ops = {
      {"merge", OperatorKind::Merge, "", {"d3", "d8"}, {"d4"}},
      {"sync", OperatorKind::Sync, "", {"d2", "d4"}, {"d5", "d6"}},
      {"incr", OperatorKind::Increment, "", {}, {"d1"}},
      {"lt", OperatorKind::LessThan, "", {"d1", "d0"}, {"d2"}},
      {"ifelse", OperatorKind::IfElse, "", {"d6", "d5"}, {"d7", "d9"}},
      {"process1", OperatorKind::Process, process, {"d7"}, {"d8"}},
  };
  PatternInstance p{Composition::build(std::move(data), std::move(ops)), {}};
  p.roles = {{"loop-bound", DataId{0}},
             {"counter", DataId{1}},
             {"seed", DataId{3}},
             {"result", DataId{9}}};
  return p;
}

Composition build_c0_structure() {
  std::vector<OperatorDecl> ops = {
      {"op0", OperatorKind::Process, "identity", {"d0", "d1"}, {"d2", "d3"}},
      {"op1", OperatorKind::Process, "identity", {"d2"}, {"d4"}},
      {"op2", OperatorKind::Process, "identity", {"d3"}, {"d5"}},
      {"op3", OperatorKind::Process, "add", {"d4", "d5"}, {"d6"}},
  };
  return Composition::build(numbered_data(7), std::move(ops));
}

}  // namespace flow
