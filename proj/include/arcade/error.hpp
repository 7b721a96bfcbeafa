#pragma once

#include <stdexcept>
#include <string>

namespace arcade {

// Base for all engine errors. CLI maps these to nonzero exit codes;
// law violations and lost games are reported values, not errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: unknown atom ids, ragged tables, unparsable files.
struct StructuralError : Error {
    using Error::Error;
};

// Operation precondition failed (overlapping copy images, provenance
// mismatch, wrong class count).
struct PreconditionError : Error {
    using Error::Error;
};

// A configured resource cap was hit; results so far are discarded.
struct CapExceeded : Error {
    using Error::Error;
};

} // namespace arcade
