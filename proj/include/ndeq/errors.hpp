#pragma once

#include <stdexcept>

namespace ndeq {

/// A hypothesis of the existence theorem failed for the given problem data.
struct hypothesis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Divergence, non-convergence, or a truncation budget was exceeded.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed problem files, windows, or report destinations.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ndeq
