#pragma once

#include <stdexcept>
#include <string>

namespace igof {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A root bracket without a sign change.
class BracketError : public Error {
public:
    using Error::Error;
};

/// Linear dependence in a design or a Gram-Schmidt sweep.
class RankError : public Error {
public:
    using Error::Error;
};

/// Operation requested on an object missing the state it needs.
class StateError : public Error {
public:
    using Error::Error;
};

/// Sub-vector that does not contain all of its conditioning coordinates.
class MarginalityError : public Error {
public:
    using Error::Error;
};

/// Unknown catalog entry or name.
class LookupError : public Error {
public:
    using Error::Error;
};

/// Malformed input file (CSV, JSON).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Method not available for the given configuration.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

}  // namespace igof
