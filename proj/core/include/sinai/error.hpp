#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sinai {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

/// The (alpha, p) pair has no usable characteristic-function form
/// (alpha = 1 with drift).
class UnsupportedParameterization : public Error {
 public:
  using Error::Error;
};

/// A passage level was never reached inside the available path span.
class NotAttained : public Error {
 public:
  using Error::Error;
};

class RootNotFound : public Error {
 public:
  using Error::Error;
};

class PrecisionError : public Error {
 public:
  PrecisionError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved_bound() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class InversionUnstable : public Error {
 public:
  InversionUnstable(const std::string& what, double divergence)
      : Error(what), divergence_(divergence) {}
  double divergence() const noexcept { return divergence_; }

 private:
  double divergence_;
};

class HorizonExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace sinai
