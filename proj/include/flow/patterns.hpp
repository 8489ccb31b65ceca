#pragma once

#include <map>
#include <string>

#include "flow/composition.hpp"
#include "flow/process_registry.hpp"

namespace flow {

struct PatternInstance {
  Composition composition;
  std::map<std::string, DataId> roles;
};

/// if/else pattern over d0..d6: ifelse(d1 value, d0 condition) -> (d2, d3),
/// process1(d2) -> d4, process2(d3) -> d5, merge(d4, d5) -> d6.
/// Roles: condition, value, result.
PatternInstance build_ifelse_pattern(const ProcessRegistry& reg, const std::string& process1,
                                     const std::string& process2);

/// Loop pattern over d0..d9, declared as merge, sync, incr, lt, ifelse,
/// process1 so that declaration order settles the waiting-time ties.
/// Roles: loop-bound (d0), counter (d1), seed (d3), result (d9).
PatternInstance build_loop_pattern(const ProcessRegistry& reg, const std::string& process);

/// The bare seven-data structure with general-process operators in place of
/// the if/else pattern's special ones. Useful for marking experiments.
Composition build_c0_structure();

}  // namespace flow
