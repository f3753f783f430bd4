#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace markt {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Syntax error in a process, model, test or suite text. A zero rate
/// written in the source is reported here too, with its position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, SourcePos pos)
      : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
        pos_(pos) {}

  SourcePos position() const { return pos_; }

 private:
  SourcePos pos_;
};

/// Well-formed text that violates a semantic rule: unbound or unguarded
/// constants, non-positive rates, non-canonical tests, tau inside a test.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// State exploration exceeded the configured cap.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(std::size_t cap)
      : std::runtime_error("state space exceeds the exploration cap of " + std::to_string(cap) + " states"),
        cap_(cap) {}

  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace markt
