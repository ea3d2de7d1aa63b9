#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace properkit {

// Raised for contract violations on inputs (unknown states, agent indices out
// of range, malformed files, ...). Validation that is expected to produce a
// report rather than fail returns diagnostics instead of throwing.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Formula syntax error; position is a 0-based offset into the input text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace properkit
