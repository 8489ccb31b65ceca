#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace flow {

/// Token state of a data node. The numeric codes are the marking values:
/// 0 = no information, 1 = consumed information, 2 = fresh information.
enum class TokenState : std::uint8_t { Void = 0, Old = 1, New = 2 };

/// One-letter code used in traces and summaries (V, O, N).
char token_code(TokenState state);

/// Optional sort annotation on a data node. Checked when a value is stored.
enum class ValueSort { Any, Boolean, Number, Text };

std::string_view to_string(ValueSort sort);
std::optional<ValueSort> parse_sort(std::string_view word);

struct Absent {
  friend bool operator==(Absent, Absent) { return true; }
};

/// Information held by a data node.
class Value {
 public:
  Value() = default;

  static Value boolean(bool b) { return Value(Storage(b)); }
  static Value number(double x) { return Value(Storage(x)); }
  static Value text(std::string s) { return Value(Storage(std::move(s))); }

  bool is_absent() const { return std::holds_alternative<Absent>(v_); }
  bool is_boolean() const { return std::holds_alternative<bool>(v_); }
  bool is_number() const { return std::holds_alternative<double>(v_); }
  bool is_text() const { return std::holds_alternative<std::string>(v_); }

  // These throw Error(TypeMismatch) when the alternative does not match.
  bool as_boolean() const;
  double as_number() const;
  const std::string& as_text() const;

  bool matches(ValueSort sort) const;
  std::string_view sort_name() const;

  friend bool operator==(const Value&, const Value&) = default;

 private:
  using Storage = std::variant<Absent, bool, double, std::string>;
  explicit Value(Storage v) : v_(std::move(v)) {}
  Storage v_;
};

/// Canonical literal form: true/false, shortest round-trip decimal for
/// numbers, double-quoted text with backslash escapes, `-` for Absent.
std::string format_value(const Value& value);

/// Parses a literal as produced by format_value (Absent excluded).
std::optional<Value> parse_literal(std::string_view literal);

/// Shortest decimal that reads back to the same binary64.
std::string format_number(double x);

}  // namespace flow
