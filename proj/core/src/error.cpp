#include "rctsim/error.hpp"

namespace rctsim {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::PositivityViolation: return "PositivityViolation";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::MissingPropensity: return "MissingPropensity";
    case ErrorKind::FoldMismatch: return "FoldMismatch";
    case ErrorKind::EmptyArm: return "EmptyArm";
    case ErrorKind::EmptyCandidates: return "EmptyCandidates";
    case ErrorKind::EmptyCell: return "EmptyCell";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::ConfigParse: return "ConfigParse";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::MalformedCsv: return "MalformedCsv";
    case ErrorKind::UnknownEstimator: return "UnknownEstimator";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message,
                     std::optional<std::size_t> index) {
  std::string out{to_string(kind)};
  out += ": ";
  out += message;
  if (index) {
    out += " (unit ";
    out += std::to_string(*index);
    out += ")";
  }
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> index)
    : std::runtime_error(decorate(kind, message, index)),
      kind_(kind),
      index_(index) {}

}  // namespace rctsim
