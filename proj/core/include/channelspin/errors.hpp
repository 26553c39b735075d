#pragma once

#include <stdexcept>
#include <string>

namespace channelspin {

// Root of the library's failure hierarchy so callers can catch one family.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A physical or configuration invariant was violated (CLI exit code 1).
struct ValidationError : Error {
    using Error::Error;
};

// Transverse energy at or above the well depth: the entry is not channeled.
struct NotChanneled : ValidationError {
    using ValidationError::ValidationError;
};

// Entry position lies outside the orbit reachable with the given amplitude.
struct InconsistentEntry : ValidationError {
    using ValidationError::ValidationError;
};

// Integrator step exceeds the resolution bound (tau/100).
struct StepTooLarge : ValidationError {
    using ValidationError::ValidationError;
};

// Two sampled series do not share a time grid.
struct GridMismatch : ValidationError {
    using ValidationError::ValidationError;
};

// Every entry point of an ensemble failed the channeling condition.
struct AllRejected : ValidationError {
    using ValidationError::ValidationError;
};

// The averaged in-plane polarization vector vanished; no angle is defined.
struct DegenerateInPlane : ValidationError {
    using ValidationError::ValidationError;
};

// Principal-branch arccot evaluated exactly on a cosine zero.
struct PoleAtHalfPi : ValidationError {
    using ValidationError::ValidationError;
};

// Config file syntax problem (CLI exit code 2). Carries the 1-based line.
struct ParseError : Error {
    int line;
    ParseError(int line_number, const std::string& message)
        : Error("line " + std::to_string(line_number) + ": " + message),
          line(line_number) {}
};

// Filesystem-level failure while reading or writing (CLI exit code 2).
struct IoError : Error {
    using Error::Error;
};

}  // namespace channelspin
