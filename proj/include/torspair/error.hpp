// Library error type carrying a stable machine-readable code.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace torspair {

// Codes in use: NotPrime, NotSymmetric, NotPerfectAtL, NotIsometry,
// NotInvertibleAtL, NotUnimodular, NotTorsion, WrongPrime, ZeroInput,
// ShapeMismatch, PreconditionViolated, UnknownFamily, GeneratorUnavailable,
// BoundExceeded, ParseError, IoError.
class Error : public std::runtime_error {
 public:
  Error(std::string code, std::string message)
      : std::runtime_error(code + ": " + message),
        code_(std::move(code)),
        message_(std::move(message)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string code_;
  std::string message_;
};

}  // namespace torspair
