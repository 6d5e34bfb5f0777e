#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tms {

// Base class for every error raised by the library. Callers that only care
// about "the operation failed" catch this one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad model files, inconsistent shapes, unknown symbols.
// The CLI maps this to exit status 2.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Integer cocycle or lattice arithmetic left the int64 range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class EnumerationCapExceeded : public Error {
 public:
  EnumerationCapExceeded(std::size_t cap, std::size_t partial)
      : Error("enumeration cap exceeded (cap " + std::to_string(cap) +
              ", partial count " + std::to_string(partial) + ")"),
        cap_(cap),
        partial_(partial) {}

  std::size_t cap() const { return cap_; }
  std::size_t partial_count() const { return partial_; }

 private:
  std::size_t cap_;
  std::size_t partial_;
};

}  // namespace tms
