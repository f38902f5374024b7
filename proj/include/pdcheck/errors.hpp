#pragma once

#include <stdexcept>
#include <string>

namespace pdcheck {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed inputs: bad parameters, violated preconditions, invalid configs.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class PoleOnAxis : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Kernel decay too weak for the growth of a density atom.
class InsufficientPower : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class UnsupportedDistribution : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Atom outside the closed-form Fourier catalog.
class UnsupportedAtom : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class UnsupportedOrder : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class NonUniformGrid : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class NormalizationError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Malformed spec documents.
class SpecError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Failures of the numerics themselves (as opposed to bad input).
class NumericalError : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace pdcheck
