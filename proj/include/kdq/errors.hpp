// errors.hpp — exception taxonomy shared by the whole library.
//
// The three leaf types map onto the CLI exit codes: validation failures
// exit with 2, physically impossible requests with 3, and numerical
// invariant violations detected at runtime with 4.

#pragma once

#include <stdexcept>

namespace kdq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad inputs: dimension mismatches, malformed scenarios, invariant
// violations at construction time.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Requests that are impossible for the given state, e.g. postselecting
// on an outcome of probability zero.
class PhysicalError : public Error {
public:
    using Error::Error;
};

// A numerical invariant broke at runtime (corrupt quasiprobability table).
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace kdq
