#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tadic {

enum class ErrorCode {
  EvenDivisor,
  PrecisionExceeded,
  NotDivisible,
  ModulusTooLarge,
  InvalidParameter,
  NotInvariant,
  WrongProvenance,
  PreconditionViolated,
  Syntax,
  NonConstantExponent,
  NonConstantInvArgument,
  EvenInvConstant,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the map DSL parser. `position` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t position,
             std::vector<std::string> expected, const std::string& what)
      : Error(code, what), position_(position), expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

}  // namespace tadic
