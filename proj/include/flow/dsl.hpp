#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flow/composition.hpp"
#include "flow/concurrent.hpp"
#include "flow/operators.hpp"
#include "flow/state.hpp"

namespace flow {

struct InitEntry {
  DataId data;
  Value value;
  TokenState mark = TokenState::New;
  friend bool operator==(const InitEntry&, const InitEntry&) = default;
};

/// A parsed `.flow` file.
struct CompositionDocument {
  Composition composition;
  std::vector<InitEntry> init;
  DurationModel durations;
};

/// Line-oriented format, `#` starts a comment:
///
///   data <name> [bool|num|text|any]
///   op <name> <kind>[:<process>] (<in>, ...) -> (<out>, ...)    `-` or nothing for none
///   init <name> = <literal> [old]
///   dur <op> = <positive number>
///
/// Errors carry the 1-based line. Structural problems found after the
/// whole file is read (arity, overlap, ...) point at the offending `op` line.
CompositionDocument parse_composition(std::string_view text);

/// Canonical text; parse_composition(emit_composition(doc)) reproduces doc.
std::string emit_composition(const CompositionDocument& doc);

/// State at step 0 built from the `init` entries.
ExecutionState seed_state(const CompositionDocument& doc);

/// Replaces (or adds) the init literal of `name`, keeping its old/new flag.
/// `assignment` is `name=literal`. Throws SyntaxError / UnknownDataReference.
void apply_seed_override(CompositionDocument& doc, std::string_view assignment);

/// One line per firing:
///   step=<t> op=<name> [reads={..}] writes={..} marking=<name:V|O|N,..>
/// `reads` is left out when nothing was read.
std::string serialize_trace(const Composition& comp, std::span<const TraceEvent> trace);
std::string format_event(const Composition& comp, const TraceEvent& event);

/// `final: <name>=<value>(<V|O|N>) ...` for all data.
std::string format_summary(const Composition& comp, const ExecutionState& state);

}  // namespace flow
