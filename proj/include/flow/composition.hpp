#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flow/value.hpp"

namespace flow {

struct DataId {
  std::size_t index = 0;
  friend auto operator<=>(DataId, DataId) = default;
};

struct OperatorId {
  std::size_t index = 0;
  friend auto operator<=>(OperatorId, OperatorId) = default;
};

enum class OperatorKind { Process, IfElse, Merge, Sync, Increment, LessThan };

/// DSL keyword for a kind: process, ifelse, merge, sync, incr, lt.
std::string_view to_string(OperatorKind kind);
std::optional<OperatorKind> parse_kind(std::string_view word);

struct DataDecl {
  std::string name;
  ValueSort sort = ValueSort::Any;
};

/// Operator declaration referring to data by name. Port order matters:
/// if/else takes (value, condition) and writes (if-branch, else-branch).
struct OperatorDecl {
  std::string name;
  OperatorKind kind = OperatorKind::Process;
  std::string process;  // registered process name, Process kind only
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

struct DataNode {
  DataId id;
  std::string name;
  ValueSort sort = ValueSort::Any;
  friend bool operator==(const DataNode&, const DataNode&) = default;
};

struct OperatorSpec {
  OperatorId id;
  std::string name;
  OperatorKind kind = OperatorKind::Process;
  std::string process;
  std::vector<DataId> inputs;
  std::vector<DataId> outputs;
  friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;
};

/// The static net: data nodes, operators and their input/output wiring.
/// Immutable once built; indices are dense and follow declaration order.
class Composition {
 public:
  Composition() = default;

  /// Validates and resolves declarations. Throws Error with kind
  /// DuplicateName, UnknownDataReference, ArityMismatch, InputOutputOverlap,
  /// UnknownProcess (process operator without a process name) or UnknownKind
  /// (process name on a special operator).
  static Composition build(std::vector<DataDecl> data, std::vector<OperatorDecl> ops);

  const std::vector<DataNode>& data() const { return data_; }
  const std::vector<OperatorSpec>& operators() const { return ops_; }

  const DataNode& data(DataId id) const { return data_.at(id.index); }
  const OperatorSpec& op(OperatorId id) const { return ops_.at(id.index); }

  std::optional<DataId> find_data(std::string_view name) const;
  std::optional<OperatorId> find_operator(std::string_view name) const;

  std::size_t data_count() const { return data_.size(); }
  std::size_t operator_count() const { return ops_.size(); }

  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  std::vector<DataNode> data_;
  std::vector<OperatorSpec> ops_;
};

/// Input/output port counts a kind requires; nullopt means "any".
struct Arity {
  std::optional<std::size_t> inputs;
  std::optional<std::size_t> outputs;
};
Arity arity_of(OperatorKind kind);

/// I(op) ∪ O(op), sorted by index.
std::vector<DataId> neighborhood(const Composition& comp, OperatorId op);

struct Arc {
  enum class Direction { DataToOperator, OperatorToData };
  Direction direction;
  DataId data;
  OperatorId op;
  friend bool operator==(const Arc&, const Arc&) = default;
};

struct BipartiteGraph {
  std::size_t data_vertices = 0;
  std::size_t operator_vertices = 0;
  std::vector<Arc> arcs;
};

/// Arcs (d, op) for d in I(op) followed by (op, d) for d in O(op), operator
/// by operator in declaration order.
BipartiteGraph as_bipartite_graph(const Composition& comp);

}  // namespace flow
