#pragma once

#include <stdexcept>
#include <string>

namespace newton {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: polynomial text, JSON, CLI arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

// A mathematical precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Truncation degree, iteration or resample caps were exhausted.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A checked theorem or identity failed on concrete data.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace newton
