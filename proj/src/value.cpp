#include "flow/value.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "flow/error.hpp"

namespace flow {

char token_code(TokenState state) {
  switch (state) {
    case TokenState::Void: return 'V';
    case TokenState::Old: return 'O';
    case TokenState::New: return 'N';
  }
  return '?';
}

std::string_view to_string(ValueSort sort) {
  switch (sort) {
    case ValueSort::Any: return "any";
    case ValueSort::Boolean: return "bool";
    case ValueSort::Number: return "num";
    case ValueSort::Text: return "text";
  }
  return "any";
}

std::optional<ValueSort> parse_sort(std::string_view word) {
  if (word == "any") return ValueSort::Any;
  if (word == "bool") return ValueSort::Boolean;
  if (word == "num") return ValueSort::Number;
  if (word == "text") return ValueSort::Text;
  return std::nullopt;
}

std::string_view Value::sort_name() const {
  if (is_boolean()) return "bool";
  if (is_number()) return "num";
  if (is_text()) return "text";
  return "absent";
}

bool Value::as_boolean() const {
  if (!is_boolean())
    throw Error(ErrorKind::TypeMismatch, "expected bool, got " + std::string(sort_name()));
  return std::get<bool>(v_);
}

double Value::as_number() const {
  if (!is_number())
    throw Error(ErrorKind::TypeMismatch, "expected num, got " + std::string(sort_name()));
  return std::get<double>(v_);
}

const std::string& Value::as_text() const {
  if (!is_text())
    throw Error(ErrorKind::TypeMismatch, "expected text, got " + std::string(sort_name()));
  return std::get<std::string>(v_);
}

bool Value::matches(ValueSort sort) const {
  switch (sort) {
    case ValueSort::Any: return true;
    case ValueSort::Boolean: return is_boolean();
    case ValueSort::Number: return is_number();
    case ValueSort::Text: return is_text();
  }
  return false;
}

std::string format_number(double x) {
  if (x == 0) x = 0;  // -0 prints as 0
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

std::string format_value(const Value& value) {
  if (value.is_absent()) return "-";
  if (value.is_boolean()) return value.as_boolean() ? "true" : "false";
  if (value.is_number()) return format_number(value.as_number());
  std::string out = "\"";
  for (char c : value.as_text()) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

namespace {

std::optional<Value> parse_text(std::string_view s) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return std::nullopt;
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    char c = s[i];
    if (c == '"') return std::nullopt;
    if (c != '\\') {
      out += c;
      continue;
    }
    if (i + 2 >= s.size()) return std::nullopt;
    switch (s[++i]) {
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      default: return std::nullopt;
    }
  }
  return Value::text(std::move(out));
}

std::optional<Value> parse_number(std::string_view s) {
  // from_chars would also take "inf" and "nan"; only plain decimals here.
  for (char c : s) {
    bool ok = (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.' || c == 'e' || c == 'E';
    if (!ok) return std::nullopt;
  }
  if (s.empty()) return std::nullopt;
  double x = 0;
  const char* first = s.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x)) return std::nullopt;
  return Value::number(x);
}

}  // namespace

std::optional<Value> parse_literal(std::string_view literal) {
  if (literal == "true") return Value::boolean(true);
  if (literal == "false") return Value::boolean(false);
  if (!literal.empty() && literal.front() == '"') return parse_text(literal);
  return parse_number(literal);
}

}  // namespace flow
