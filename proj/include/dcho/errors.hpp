#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dcho {

/// A value does not fit the bit field it is destined for.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Malformed text. `offset` is the byte position where parsing stopped.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  explicit ParseError(const std::string& what)
      : std::runtime_error(what), offset_(0) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scenario parsed fine but violates a cross-field invariant.
class ValidationError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dcho
