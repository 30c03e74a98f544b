#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cliffext {

// Bad user input: malformed group specs, ill-defined matrices, shape mismatches.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Group-spec syntax error carrying the byte offset of the offending character.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : ValidationError(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// An operation was called outside its domain (e.g. odd section for an even group).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A search or enumeration would exceed its configured budget. Never a silent truncation.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Something that must be impossible happened; results computed so far are suspect.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cliffext
