#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace finexch {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed inputs, inconsistent dimensions, violated preconditions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An enumeration or table would exceed its configured size cap.  Carries the
// computed size as a decimal string (it may not fit in any machine integer).
class CapExceededError : public ValidationError {
 public:
  CapExceededError(const std::string& what, std::string computed_size)
      : ValidationError(what), computed_size_(std::move(computed_size)) {}

  const std::string& computed_size() const { return computed_size_; }

 private:
  std::string computed_size_;
};

// The observed sample has probability zero under the model's prior weights.
class ZeroProbabilityError : public Error {
 public:
  ZeroProbabilityError()
      : Error(
            "zero-probability sample: f_H^m would need to be revised in the "
            "light of the sample") {}
};

}  // namespace finexch
