#pragma once

#include <stdexcept>
#include <string>

namespace octfield {

// Error taxonomy mapped to CLI exit codes: usage=1, io=2, numeric=3, domain=4.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file (bad syntax, non-finite values). Carries the line when known.
struct FormatError : IoError {
    explicit FormatError(const std::string& msg, long line = -1)
        : IoError(line >= 0 ? msg + " (line " + std::to_string(line) + ")" : msg), line_no(line) {}
    long line_no;
};

// NaN/Inf encountered in a numeric kernel or a diverging optimization.
struct NumericFault : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precondition violated on otherwise well-formed data (degenerate mesh, point
// outside an octant, mismatched sizes, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace octfield
