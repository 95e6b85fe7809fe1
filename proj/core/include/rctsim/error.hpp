#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rctsim {

enum class ErrorKind {
  PositivityViolation,
  DomainViolation,
  LengthMismatch,
  MissingPropensity,
  FoldMismatch,
  EmptyArm,
  EmptyCandidates,
  EmptyCell,
  DegenerateInput,
  ConfigParse,
  IoFailure,
  MalformedCsv,
  UnknownEstimator,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Exception carrying a machine-readable kind and, where meaningful, the
/// offending unit index.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

}  // namespace rctsim
