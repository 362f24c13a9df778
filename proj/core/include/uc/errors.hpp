#pragma once

#include <stdexcept>
#include <string>

namespace uc {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// SDR or segment lengths do not line up.
struct DimensionError : Error {
  using Error::Error;
};

// A value is outside its domain (non-finite number, unknown category, ...).
struct ValueError : Error {
  using Error::Error;
};

// A file or byte stream does not match its declared format.
struct FormatError : Error {
  using Error::Error;
};

// A run configuration is inconsistent or incomplete.
struct ConfigError : Error {
  using Error::Error;
};

// An internal invariant was violated; indicates a bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace uc
