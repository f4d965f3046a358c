#pragma once

#include <stdexcept>
#include <string>

namespace vaform {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation of a rational function at a root of its denominator.
struct PoleError : Error {
    using Error::Error;
};

/// Malformed textual input (scalars, configs).
struct ParseError : Error {
    using Error::Error;
};

/// Structural problem in an algebra presentation or datum.
struct ValidationError : Error {
    using Error::Error;
};

/// Mode index outside the coset allowed by the generator weight.
struct ModeCosetError : Error {
    using Error::Error;
};

/// Degenerate input to an operation that requires a nonzero object.
struct DegenerateInputError : Error {
    using Error::Error;
};

/// Operation requires quasiprimary generators and the presentation has none.
struct UnsupportedPresentationError : Error {
    using Error::Error;
};

} // namespace vaform
