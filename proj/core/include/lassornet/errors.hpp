#pragma once

#include <stdexcept>
#include <string>

namespace lassornet {

// Root of the library's exception hierarchy.  The three direct children
// correspond to the CLI exit codes: ConfigError -> 1, DataError -> 2,
// NumericalError -> 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct DataError : Error {
  using Error::Error;
};

struct NumericalError : Error {
  using Error::Error;
};

// -- data errors --------------------------------------------------------

struct ParseError : DataError {
  using DataError::DataError;
};
struct InconsistentGenesError : DataError {
  using DataError::DataError;
};
struct DuplicateSampleError : DataError {
  using DataError::DataError;
};
struct AllGenesRemovedError : DataError {
  using DataError::DataError;
};
struct TooFewPeopleError : DataError {
  using DataError::DataError;
};
struct BadSpecError : DataError {
  using DataError::DataError;
};
struct DimensionMismatchError : DataError {
  using DataError::DataError;
};
struct EmptyInputError : DataError {
  using DataError::DataError;
};
struct OutOfRangeError : DataError {
  using DataError::DataError;
};
struct ZeroVectorError : DataError {
  using DataError::DataError;
};
struct EmptyValidationError : DataError {
  using DataError::DataError;
};
struct MissingSamplesError : DataError {
  using DataError::DataError;
};
struct LengthMismatchError : DataError {
  using DataError::DataError;
};

// -- numerical errors ---------------------------------------------------

struct DivergedError : NumericalError {
  using NumericalError::NumericalError;
};
struct NonConvergenceError : NumericalError {
  using NumericalError::NumericalError;
};
struct RankDeficientError : NumericalError {
  using NumericalError::NumericalError;
};
struct SingularDesignError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace lassornet
