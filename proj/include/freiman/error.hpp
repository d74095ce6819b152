#pragma once

#include <stdexcept>
#include <string>

namespace freiman {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: bad files, invalid parameters, violated preconditions.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
};

/// A configured computation budget would be exceeded.
class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& what) : Error(what) {}
};

/// A constructed object failed its own postcondition check.
class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& what) : Error(what) {}
};

}  // namespace freiman
