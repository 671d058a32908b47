#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tzone {

/// Unusable input data: unknown CSV header, too many malformed rows, empty file.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical failure: diverging paths, degenerate likelihood, root find out of bracket.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An integration step produced a non-finite state; carries step and path indices.
class IntegrationError : public NumericalError {
public:
    IntegrationError(std::size_t step, std::size_t path)
        : NumericalError("non-finite value at integration step " + std::to_string(step) +
                         " of path " + std::to_string(path)),
          step_index(step),
          path_index(path) {}

    std::size_t step_index;
    std::size_t path_index;
};

}  // namespace tzone
