#include "flow/error.hpp"

namespace flow {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnknownDataReference: return "UnknownDataReference";
    case ErrorKind::UnknownOperator: return "UnknownOperator";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::InputOutputOverlap: return "InputOutputOverlap";
    case ErrorKind::ValueMissingForToken: return "ValueMissingForToken";
    case ErrorKind::ValueWithoutToken: return "ValueWithoutToken";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NoNewToken: return "NoNewToken";
    case ErrorKind::UnknownProcess: return "UnknownProcess";
    case ErrorKind::OutputArityMismatch: return "OutputArityMismatch";
    case ErrorKind::NotEnabled: return "NotEnabled";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownKind: return "UnknownKind";
    case ErrorKind::InvalidDuration: return "InvalidDuration";
  }
  return "Error";
}

namespace {
std::string decorate(ErrorKind kind, const std::string& message, int line) {
  std::string out(to_string(kind));
  if (line > 0) out += " (line " + std::to_string(line) + ")";
  out += ": ";
  out += message;
  return out;
}
}  // namespace

Error::Error(ErrorKind kind, const std::string& message, int line)
    : std::runtime_error(decorate(kind, message, line)), kind_(kind), line_(line) {}

}  // namespace flow
