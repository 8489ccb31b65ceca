#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flow {

enum class ErrorKind {
  DuplicateName,
  UnknownDataReference,
  UnknownOperator,
  ArityMismatch,
  InputOutputOverlap,
  ValueMissingForToken,
  ValueWithoutToken,
  TypeMismatch,
  NoNewToken,
  UnknownProcess,
  OutputArityMismatch,
  NotEnabled,
  SyntaxError,
  UnknownKind,
  InvalidDuration,
};

std::string_view to_string(ErrorKind kind);

// Every failure surfaced by the library. `line` is 1-based and only set by
// the document parser.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, int line = 0);

  ErrorKind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  int line_;
};

}  // namespace flow
