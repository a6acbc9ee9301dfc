#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace renyi {

enum class ErrorKind {
  NonHermitian,
  NotPSD,
  DimensionMismatch,
  SupportViolation,
  OutOfRange,
  SizeBudget,
  NotDyadic,
  SolverFailure,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Library-wide exception; `kind()` lets callers (the CLI in particular)
/// map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace renyi
