#include "flow/dot.hpp"

#include <sstream>

namespace flow {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

const char* fill_for(TokenState state) {
  switch (state) {
    case TokenState::New: return "blue";
    case TokenState::Old: return "green";
    case TokenState::Void: return "white";
  }
  return "white";
}

}  // namespace

std::string to_dot(const Composition& comp, std::optional<std::span<const TokenState>> marking) {
  std::ostringstream os;
  os << "digraph composition {\n";
  os << "  rankdir=LR;\n";
  for (const auto& d : comp.data()) {
    TokenState state = marking ? (*marking)[d.id.index] : TokenState::Void;
    os << "  " << quoted("d:" + d.name) << " [shape=circle, width=0.2, fixedsize=true, label=\"\", xlabel="
       << quoted(d.name) << ", style=filled, fillcolor=" << fill_for(state) << "];\n";
  }
  for (const auto& op : comp.operators()) {
    std::string label = op.name + "\n" +
                        (op.kind == OperatorKind::Process ? op.process : std::string(to_string(op.kind)));
    os << "  " << quoted("op:" + op.name) << " [shape=circle, width=0.8, label=" << quoted(label)
       << "];\n";
  }
  for (const auto& op : comp.operators()) {
    for (DataId d : op.inputs)
      os << "  " << quoted("d:" + comp.data(d).name) << " -> " << quoted("op:" + op.name) << ";\n";
    for (DataId d : op.outputs)
      os << "  " << quoted("op:" + op.name) << " -> " << quoted("d:" + comp.data(d).name) << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace flow
