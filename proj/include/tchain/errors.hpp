#pragma once

#include <stdexcept>
#include <string>

namespace tchain {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user input: bad chain spec, malformed config, out-of-range index.
/// The CLI maps these to exit code 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Parity resolution requested for a Hamiltonian without mirror symmetry.
class SymmetryError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Too few levels left to form spacing statistics.
class StatisticsError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Numerical failure: singular matrix, failed decomposition, lost precision.
/// The CLI maps these (and the two below) to exit code 2.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Requested problem size exceeds the hard memory ceiling.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Intermediate value would overflow the double floating range.
class RangeError : public Error {
public:
    using Error::Error;
};

} // namespace tchain
