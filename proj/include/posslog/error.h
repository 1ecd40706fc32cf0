#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace posslog {

// Malformed input text. Maps to CLI exit code 2.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Bad command-line usage or a reference to an unknown name. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed request that the theory rejects, e.g. conditioning on an
// impossible event or an unnormalized table. Exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Too many variables for exhaustive world enumeration. Exit code 1.
class GuardError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace posslog
