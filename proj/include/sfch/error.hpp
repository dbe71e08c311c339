#pragma once

#include <stdexcept>
#include <string>

namespace sfch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two fields, masks or spectra that must share a grid do not.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Reading or writing an image or table failed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// The image file exists but its header or payload cannot be decoded.
class FormatError : public IoError {
 public:
  using IoError::IoError;
};

/// A time step produced a non-finite sample.
class BlowUpError : public Error {
 public:
  BlowUpError(long iteration, const std::string& what)
      : Error(what), iteration_(iteration) {}

  long iteration() const noexcept { return iteration_; }

 private:
  long iteration_;
};

}  // namespace sfch
