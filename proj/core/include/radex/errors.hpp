#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace radex {

enum class ErrorKind {
  Parse,
  Domain,
  NonPositiveWeight,
  Eval,
  NonMonotoneAbscissa,
  NoBracket,
  TangentialTurningPoint,
  ForbiddenRegion,
  QuadratureFailure,
  StalledDescent,
  DomainViolation,
};

std::string_view to_string(ErrorKind kind);

// Base of every exception the library throws. `kind()` is stable and is what
// the CLI prints as the error name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const { return to_string(kind_); }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected,
             const std::string& detail);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept {
    return expected_;
  }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace radex
