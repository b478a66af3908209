#pragma once

#include <stdexcept>
#include <string>

namespace svdmark {

// Base class for all toolkit errors. Subclasses map onto the CLI exit
// codes: validation (1), capacity (2), I/O (3).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed file contents (PGM header, key file, mark file).
class FormatError : public Error {
public:
    using Error::Error;
};

// Image geometry problems: non-multiple-of-8 dimensions, size mismatches,
// block coordinates outside the grid.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Key generation found fewer eligible blocks than requested bits.
class CapacityError : public Error {
public:
    CapacityError(int found, int requested)
        : Error("insufficient eligible blocks: found " + std::to_string(found) +
                " of " + std::to_string(requested)),
          found_(found),
          requested_(requested) {}

    int found() const { return found_; }
    int requested() const { return requested_; }

private:
    int found_;
    int requested_;
};

// Zero-variance inputs where a formula is undefined: correlation of a
// constant mark, histogram stretch of a constant image.
class DegenerateError : public Error {
public:
    using Error::Error;
};

// Filesystem-level failure (open/read/write).
class IoError : public Error {
public:
    using Error::Error;
};

// A numeric routine exceeded its iteration cap. Indicates a defect, not
// a data problem.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace svdmark
