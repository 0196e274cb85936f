#pragma once

#include <stdexcept>
#include <string>

namespace winratio {

// Error taxonomy mirrored by the CLI exit codes: invalid parameters map to
// usage errors, malformed input to data errors, and a broken theorem-backed
// audit to an internal invariant breach.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

struct DataError : Error {
    using Error::Error;
};

// All cross-pairs tied or censoring-indeterminate: no determinate pairs, so
// AUC and WR are undefined for the comparison.
struct NoDeterminatePairs : DataError {
    using DataError::DataError;
};

struct InvariantViolation : Error {
    using Error::Error;
};

}  // namespace winratio
