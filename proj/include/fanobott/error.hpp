#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fanobott {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact integer computation left the 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a structural invariant (tower shape, matrix shape, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A document could not be read into a tower.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A brute-force search or sweep was refused because it exceeds its size limit.
class LimitError : public Error {
 public:
  LimitError(const std::string& what, std::uint64_t requested, std::uint64_t limit)
      : Error(what), requested_(requested), limit_(limit) {}

  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t requested_;
  std::uint64_t limit_;
};

/// Something that the mathematics guarantees did not hold. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fanobott
