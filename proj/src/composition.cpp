#include "flow/composition.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "flow/error.hpp"

namespace flow {

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Process: return "process";
    case OperatorKind::IfElse: return "ifelse";
    case OperatorKind::Merge: return "merge";
    case OperatorKind::Sync: return "sync";
    case OperatorKind::Increment: return "incr";
    case OperatorKind::LessThan: return "lt";
  }
  return "process";
}

std::optional<OperatorKind> parse_kind(std::string_view word) {
  for (auto k : {OperatorKind::Process, OperatorKind::IfElse, OperatorKind::Merge,
                 OperatorKind::Sync, OperatorKind::Increment, OperatorKind::LessThan}) {
    if (to_string(k) == word) return k;
  }
  return std::nullopt;
}

Arity arity_of(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Process: return {std::nullopt, std::nullopt};
    case OperatorKind::IfElse: return {2, 2};
    case OperatorKind::Merge: return {2, 1};
    case OperatorKind::Sync: return {2, 2};
    case OperatorKind::Increment: return {0, 1};
    case OperatorKind::LessThan: return {2, 1};
  }
  return {};
}

namespace {

std::string port_count(std::optional<std::size_t> n, const char* fallback) {
  return n ? std::to_string(*n) : fallback;
}

}  // namespace

Composition Composition::build(std::vector<DataDecl> data, std::vector<OperatorDecl> ops) {
  Composition comp;
  std::map<std::string, DataId, std::less<>> by_name;

  for (auto& decl : data) {
    DataId id{comp.data_.size()};
    if (!by_name.emplace(decl.name, id).second)
      throw Error(ErrorKind::DuplicateName, "data '" + decl.name + "' declared twice");
    comp.data_.push_back(DataNode{id, std::move(decl.name), decl.sort});
  }

  std::set<std::string, std::less<>> op_names;
  for (auto& decl : ops) {
    const std::string who = "operator '" + decl.name + "'";
    if (!op_names.insert(decl.name).second)
      throw Error(ErrorKind::DuplicateName, who + " declared twice");

    auto resolve = [&](const std::vector<std::string>& names) {
      std::vector<DataId> ids;
      for (const auto& n : names) {
        auto it = by_name.find(n);
        if (it == by_name.end())
          throw Error(ErrorKind::UnknownDataReference, who + " refers to unknown data '" + n + "'");
        if (std::find(ids.begin(), ids.end(), it->second) != ids.end())
          throw Error(ErrorKind::DuplicateName, who + " lists data '" + n + "' twice on one side");
        ids.push_back(it->second);
      }
      return ids;
    };
    std::vector<DataId> in = resolve(decl.inputs);
    std::vector<DataId> out = resolve(decl.outputs);

    Arity arity = arity_of(decl.kind);
    bool in_ok = !arity.inputs || *arity.inputs == in.size();
    bool out_ok = arity.outputs ? *arity.outputs == out.size() : !out.empty();
    if (!in_ok || !out_ok) {
      throw Error(ErrorKind::ArityMismatch,
                  who + " of kind " + std::string(to_string(decl.kind)) + " needs " +
                      port_count(arity.inputs, "any number of") + " inputs and " +
                      port_count(arity.outputs, "at least one") + " outputs, got " +
                      std::to_string(in.size()) + "/" + std::to_string(out.size()));
    }

    for (DataId d : in) {
      if (std::find(out.begin(), out.end(), d) != out.end())
        throw Error(ErrorKind::InputOutputOverlap,
                    who + " uses data '" + comp.data_[d.index].name + "' as input and output");
    }

    if (decl.kind == OperatorKind::Process && decl.process.empty())
      throw Error(ErrorKind::UnknownProcess, who + " has no process function");
    if (decl.kind != OperatorKind::Process && !decl.process.empty())
      throw Error(ErrorKind::UnknownKind,
                  who + ": only process operators take a process name");

    OperatorId id{comp.ops_.size()};
    comp.ops_.push_back(OperatorSpec{id, std::move(decl.name), decl.kind,
                                     std::move(decl.process), std::move(in), std::move(out)});
  }
  return comp;
}

std::optional<DataId> Composition::find_data(std::string_view name) const {
  for (const auto& d : data_)
    if (d.name == name) return d.id;
  return std::nullopt;
}

std::optional<OperatorId> Composition::find_operator(std::string_view name) const {
  for (const auto& o : ops_)
    if (o.name == name) return o.id;
  return std::nullopt;
}

std::vector<DataId> neighborhood(const Composition& comp, OperatorId op) {
  const auto& spec = comp.op(op);
  std::vector<DataId> out(spec.inputs);
  out.insert(out.end(), spec.outputs.begin(), spec.outputs.end());
  std::sort(out.begin(), out.end());
  return out;
}

BipartiteGraph as_bipartite_graph(const Composition& comp) {
  BipartiteGraph g;
  g.data_vertices = comp.data_count();
  g.operator_vertices = comp.operator_count();
  for (const auto& op : comp.operators()) {
    for (DataId d : op.inputs) g.arcs.push_back({Arc::Direction::DataToOperator, d, op.id});
    for (DataId d : op.outputs) g.arcs.push_back({Arc::Direction::OperatorToData, d, op.id});
  }
  return g;
}

}  // namespace flow
