#pragma once

#include <stdexcept>
#include <string>

namespace lcst {

// Raised when a value would exceed the configured CNF nesting depth or
// coefficient magnitude.
struct RepresentationOverflow : std::runtime_error {
  explicit RepresentationOverflow(const std::string& what)
      : std::runtime_error(what) {}
};

struct DivisionByZero : std::runtime_error {
  DivisionByZero() : std::runtime_error("ordinal division by zero") {}
};

// Parse failure with a character position and an expectation message.
struct ParseError : std::runtime_error {
  ParseError(std::size_t pos, const std::string& expected)
      : std::runtime_error("parse error at position " + std::to_string(pos) +
                           ": expected " + expected),
        position(pos),
        expected_token(expected) {}
  std::size_t position;
  std::string expected_token;
};

// A mixed-representation set comparison that cannot be decided structurally
// and has no enumeration bound configured.
struct TruncationRequired : std::runtime_error {
  explicit TruncationRequired(const std::string& what)
      : std::runtime_error(what) {}
};

struct UnsupportedGamma : std::runtime_error {
  explicit UnsupportedGamma(const std::string& what)
      : std::runtime_error(what) {}
};

// A check was invoked on inputs that violate its stated hypotheses.
struct PreconditionFailure : std::runtime_error {
  explicit PreconditionFailure(const std::string& what)
      : std::runtime_error(what) {}
};

// A sampled certificate contradicts a claimed rank.
struct CertificateFailure : std::runtime_error {
  explicit CertificateFailure(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace lcst
