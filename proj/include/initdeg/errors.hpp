#pragma once

#include <stdexcept>

namespace initdeg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad flags, malformed input files, out-of-domain requests. CLI exit code 1.
struct UsageError : Error {
    using Error::Error;
};

// A configured resource cap was exceeded; the message names the cap.
struct ResourceLimitError : UsageError {
    using UsageError::UsageError;
};

// Arithmetic domain violation: division by zero, mixed-field operands,
// missing cube root of unity, field too small to sample from.
struct MathError : Error {
    using Error::Error;
};

// A proved statement failed on computed data. CLI exit code 2.
struct InvariantError : Error {
    using Error::Error;
};

} // namespace initdeg
