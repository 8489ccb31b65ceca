#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flow/value.hpp"

namespace flow {

/// A user process: (input values, completed firings so far) -> output values.
/// Must be deterministic in its arguments.
using ProcessFn = std::function<std::vector<Value>(std::span<const Value>, std::size_t)>;

/// Builds a process from a literal argument, e.g. `mul(2)` or `const("x")`.
using ProcessFactory = std::function<ProcessFn(const Value&)>;

class ProcessRegistry {
 public:
  /// Registry holding identity, add1, not, add, mul, and the parameterized
  /// const(v), add(k), mul(k).
  static ProcessRegistry with_builtins();

  void add(std::string name, ProcessFn fn);
  void add_factory(std::string name, ProcessFactory factory);

  /// Exact names win over `base(literal)` factory lookups.
  /// Throws Error(UnknownProcess).
  ProcessFn resolve(std::string_view name) const;
  bool contains(std::string_view name) const;

 private:
  std::map<std::string, ProcessFn, std::less<>> fns_;
  std::map<std::string, ProcessFactory, std::less<>> factories_;
};

}  // namespace flow
