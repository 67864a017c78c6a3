#pragma once

#include <stdexcept>
#include <string>

namespace ramify {

// Every failure the library reports derives from Error so callers (the CLI in
// particular) can map categories onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that violates a documented precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

class NotEisenstein : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotAUnit : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotDivisible : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotOneUnit : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class BadTameDegree : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A valuation or congruence was requested beyond what the tracked
/// precision can certify.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

/// An index of inseparability could not be certified within the digit horizon.
class IndexUnresolved : public Error {
public:
    using Error::Error;
};

/// A proven identity failed to hold. Always a bug, never bad input.
class TheoremViolation : public Error {
public:
    using Error::Error;
};

} // namespace ramify
