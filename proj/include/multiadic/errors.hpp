#pragma once

#include <stdexcept>
#include <string>

namespace multiadic {

// Every failure the library can raise. The CLI maps these to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside an operation's precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

// Bit budget, scan budget, or search cap exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

// A computed object failed one of its own exact postconditions.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

// Interval enclosure too wide to decide a comparison.
class PrecisionInsufficient : public Error {
public:
    using Error::Error;
};

// Malformed configuration or command line.
class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace multiadic
