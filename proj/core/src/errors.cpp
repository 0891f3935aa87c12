#include "radex/errors.hpp"

namespace radex {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::Eval: return "EvalError";
    case ErrorKind::NonMonotoneAbscissa: return "NonMonotoneAbscissa";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::TangentialTurningPoint: return "TangentialTurningPoint";
    case ErrorKind::ForbiddenRegion: return "ForbiddenRegion";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::StalledDescent: return "StalledDescent";
    case ErrorKind::DomainViolation: return "DomainViolation";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

namespace {

std::string format_parse_message(std::size_t offset,
                                  const std::vector<std::string>& expected,
                                  const std::string& detail) {
  std::string msg = "parse error at offset " + std::to_string(offset);
  if (!detail.empty()) msg += ": " + detail;
  if (!expected.empty()) {
    msg += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ")";
  }
  return msg;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& detail)
    : Error(ErrorKind::Parse, format_parse_message(offset, expected, detail)),
      offset_(offset),
      expected_(std::move(expected)) {}

}  // namespace radex
