#include "flow/dsl.hpp"

#include <cctype>
#include <set>

#include "flow/error.hpp"

namespace flow {

namespace {

struct SourceOp {
  OperatorDecl decl;
  int line;
};

struct SourceInit {
  std::string name;
  Value value;
  TokenState mark;
  int line;
};

struct SourceDur {
  std::string op;
  Duration duration;
  int line;
};

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

// Cursor over one line with the comment already stripped.
class LineScanner {
 public:
  LineScanner(std::string_view text, int line) : s_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, what, line_);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool accept(std::string_view token) {
    skip_ws();
    if (s_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  std::string name(const char* what) {
    skip_ws();
    if (pos_ >= s_.size() || !is_name_start(s_[pos_])) fail(std::string("expected ") + what);
    std::size_t begin = pos_;
    while (pos_ < s_.size() && is_name_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(begin, pos_ - begin));
  }

  // A run of non-space characters; quotes and parentheses may enclose spaces.
  std::string chunk(const char* what) {
    skip_ws();
    std::size_t begin = pos_;
    int depth = 0;
    bool quoted = false;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (quoted) {
        if (c == '\\')
          ++pos_;
        else if (c == '"')
          quoted = false;
      } else if (c == '"') {
        quoted = true;
      } else if (c == '(') {
        ++depth;
      } else if (c == ')') {
        --depth;
      } else if (std::isspace(static_cast<unsigned char>(c)) && depth <= 0) {
        break;
      }
      ++pos_;
    }
    if (quoted) fail("unterminated text literal");
    if (depth != 0) fail("unbalanced parentheses");
    if (pos_ == begin) fail(std::string("expected ") + what);
    return std::string(s_.substr(begin, pos_ - begin));
  }

  std::vector<std::string> name_list() {
    expect("(");
    std::vector<std::string> names;
    if (accept(")")) return names;
    if (accept("-")) {
      expect(")");
      return names;
    }
    do {
      names.push_back(name("data name"));
    } while (accept(","));
    expect(")");
    return names;
  }

  int line() const { return line_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '\\')
        ++i;
      else if (c == '"')
        quoted = false;
    } else if (c == '"') {
      quoted = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

// Composition::build reports no line; rebuild growing prefixes to find the
// first declaration that breaks.
[[noreturn]] void rethrow_at_line(const Error& err, const std::vector<DataDecl>& data,
                                  const std::vector<SourceOp>& ops) {
  std::vector<OperatorDecl> prefix;
  for (const auto& op : ops) {
    prefix.push_back(op.decl);
    try {
      Composition::build(data, prefix);
    } catch (const Error& e) {
      std::string msg = e.what();
      msg = msg.substr(msg.find(": ") + 2);
      throw Error(e.kind(), msg, op.line);
    }
  }
  throw err;
}

}  // namespace

CompositionDocument parse_composition(std::string_view text) {
  std::vector<DataDecl> data;
  std::vector<int> data_lines;
  std::vector<SourceOp> ops;
  std::vector<SourceInit> inits;
  std::vector<SourceDur> durs;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    LineScanner in(strip_comment(raw), line_no);
    if (in.at_end()) continue;
    std::string keyword = in.name("keyword");

    if (keyword == "data") {
      DataDecl decl{in.name("data name"), ValueSort::Any};
      if (!in.at_end()) {
        std::string sort_word = in.name("sort");
        auto sort = parse_sort(sort_word);
        if (!sort) in.fail("unknown sort '" + sort_word + "'");
        decl.sort = *sort;
      }
      if (!in.at_end()) in.fail("trailing text after data declaration");
      for (const auto& d : data)
        if (d.name == decl.name)
          throw Error(ErrorKind::DuplicateName, "data '" + decl.name + "' declared twice", line_no);
      data.push_back(std::move(decl));
      data_lines.push_back(line_no);
    } else if (keyword == "op") {
      OperatorDecl decl;
      decl.name = in.name("operator name");
      std::string kind_word = in.chunk("operator kind");
      std::string process;
      if (auto colon = kind_word.find(':'); colon != std::string::npos) {
        process = kind_word.substr(colon + 1);
        kind_word.resize(colon);
        if (process.empty()) in.fail("empty process name");
      }
      auto kind = parse_kind(kind_word);
      if (!kind) throw Error(ErrorKind::UnknownKind, "unknown operator kind '" + kind_word + "'", line_no);
      decl.kind = *kind;
      decl.process = std::move(process);
      decl.inputs = in.name_list();
      in.expect("->");
      decl.outputs = in.name_list();
      if (!in.at_end()) in.fail("trailing text after operator declaration");
      ops.push_back({std::move(decl), line_no});
    } else if (keyword == "init") {
      std::string name = in.name("data name");
      in.expect("=");
      std::string literal = in.chunk("literal");
      auto value = parse_literal(literal);
      if (!value) in.fail("bad literal '" + literal + "'");
      TokenState mark = TokenState::New;
      if (!in.at_end()) {
        if (in.name("'old'") != "old") in.fail("expected 'old'");
        mark = TokenState::Old;
      }
      if (!in.at_end()) in.fail("trailing text after init");
      inits.push_back({std::move(name), std::move(*value), mark, line_no});
    } else if (keyword == "dur") {
      std::string op = in.name("operator name");
      in.expect("=");
      std::string number = in.chunk("duration");
      auto d = Duration::parse(number);
      if (!d) in.fail("bad duration '" + number + "'");
      if (*d <= Duration(0))
        throw Error(ErrorKind::InvalidDuration, "duration must be positive", line_no);
      if (!in.at_end()) in.fail("trailing text after duration");
      durs.push_back({std::move(op), *d, line_no});
    } else {
      in.fail("unknown keyword '" + keyword + "'");
    }
  }

  CompositionDocument doc;
  std::vector<OperatorDecl> decls;
  for (const auto& op : ops) decls.push_back(op.decl);
  try {
    doc.composition = Composition::build(data, std::move(decls));
  } catch (const Error& e) {
    rethrow_at_line(e, data, ops);
  }
  const Composition& comp = doc.composition;

  std::set<std::size_t> seen;
  for (auto& init : inits) {
    auto id = comp.find_data(init.name);
    if (!id)
      throw Error(ErrorKind::UnknownDataReference, "init of unknown data '" + init.name + "'",
                  init.line);
    if (!seen.insert(id->index).second)
      throw Error(ErrorKind::DuplicateName, "data '" + init.name + "' initialized twice", init.line);
    const auto& node = comp.data(*id);
    if (!init.value.matches(node.sort))
      throw Error(ErrorKind::TypeMismatch,
                  "data '" + node.name + "' is declared " + std::string(to_string(node.sort)),
                  init.line);
    doc.init.push_back({*id, std::move(init.value), init.mark});
  }

  for (const auto& dur : durs) {
    auto id = comp.find_operator(dur.op);
    if (!id)
      throw Error(ErrorKind::UnknownOperator, "duration for unknown operator '" + dur.op + "'",
                  dur.line);
    if (doc.durations.durations.count(*id))
      throw Error(ErrorKind::DuplicateName, "duration of '" + dur.op + "' given twice", dur.line);
    doc.durations.set(*id, dur.duration);
  }
  return doc;
}

std::string emit_composition(const CompositionDocument& doc) {
  const Composition& comp = doc.composition;
  std::string out;
  auto section_break = [&] {
    if (!out.empty()) out += '\n';
  };

  for (const auto& d : comp.data()) {
    out += "data " + d.name;
    if (d.sort != ValueSort::Any) out += " " + std::string(to_string(d.sort));
    out += '\n';
  }

  auto names = [&](const std::vector<DataId>& ids) {
    if (ids.empty()) return std::string("(-)");
    std::string s = "(";
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) s += ", ";
      s += comp.data(ids[i]).name;
    }
    return s + ")";
  };
  if (comp.operator_count()) section_break();
  for (const auto& op : comp.operators()) {
    out += "op " + op.name + " " + std::string(to_string(op.kind));
    if (!op.process.empty()) out += ":" + op.process;
    out += " " + names(op.inputs) + " -> " + names(op.outputs) + "\n";
  }

  if (!doc.init.empty()) section_break();
  for (const auto& init : doc.init) {
    out += "init " + comp.data(init.data).name + " = " + format_value(init.value);
    if (init.mark == TokenState::Old) out += " old";
    out += '\n';
  }

  if (!doc.durations.durations.empty()) section_break();
  for (const auto& [op, d] : doc.durations.durations)
    out += "dur " + comp.op(op).name + " = " + format_duration(d) + "\n";
  return out;
}

ExecutionState seed_state(const CompositionDocument& doc) {
  InitialMarking marks;
  InitialValues values;
  for (const auto& init : doc.init) {
    marks[init.data] = init.mark;
    values[init.data] = init.value;
  }
  return initial_state(doc.composition, marks, values);
}

void apply_seed_override(CompositionDocument& doc, std::string_view assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw Error(ErrorKind::SyntaxError, "seed override must look like name=value");
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view name = trim(assignment.substr(0, eq));
  std::string_view literal = trim(assignment.substr(eq + 1));

  auto id = doc.composition.find_data(name);
  if (!id)
    throw Error(ErrorKind::UnknownDataReference, "no data named '" + std::string(name) + "'");
  auto value = parse_literal(literal);
  if (!value) throw Error(ErrorKind::SyntaxError, "bad literal '" + std::string(literal) + "'");

  for (auto& init : doc.init) {
    if (init.data == *id) {
      init.value = std::move(*value);
      return;
    }
  }
  doc.init.push_back({*id, std::move(*value), TokenState::New});
}

std::string format_event(const Composition& comp, const TraceEvent& event) {
  std::string out = "step=" + std::to_string(event.step) + " op=" + comp.op(event.op).name;
  if (!event.reads.empty()) out += " reads=" + format_bindings(comp, event.reads);
  out += " writes=" + format_bindings(comp, event.writes);
  out += " marking=";
  for (std::size_t i = 0; i < event.marking_after.size(); ++i) {
    if (i) out += ',';
    out += comp.data(DataId{i}).name;
    out += ':';
    out += token_code(event.marking_after[i]);
  }
  return out;
}

std::string serialize_trace(const Composition& comp, std::span<const TraceEvent> trace) {
  std::string out;
  for (const auto& e : trace) {
    out += format_event(comp, e);
    out += '\n';
  }
  return out;
}

std::string format_summary(const Composition& comp, const ExecutionState& state) {
  std::string out = "final:";
  for (const auto& d : comp.data()) {
    out += ' ';
    out += d.name;
    out += '=';
    out += format_value(state.value(d.id));
    out += '(';
    out += token_code(state.mark(d.id));
    out += ')';
  }
  return out;
}

}  // namespace flow
