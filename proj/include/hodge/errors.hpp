#pragma once

#include <stdexcept>
#include <string>

namespace hodge {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally bad input: self-loops, duplicate edges, out-of-range vertex
// ids, malformed files, invalid generator parameters.
struct invalid_input : error {
    explicit invalid_input(const std::string& msg) : error(msg) {}
};

// Operands whose shapes do not line up.
struct dimension_error : error {
    explicit dimension_error(const std::string& msg) : error(msg) {}
};

// Numerical breakdown: NaN/Inf in an iteration, singular dense block,
// eigen iteration that fails to settle.
struct numerical_error : error {
    explicit numerical_error(const std::string& msg) : error(msg) {}
};

// A computed decomposition whose parts fail the orthogonality residual
// checks. Carries the offending norms so callers can report them.
struct decomposition_error : error {
    double div_residual;   // ||d1 h||
    double curl_residual;  // ||d2^T h||
    decomposition_error(const std::string& msg, double div_r, double curl_r)
        : error(msg), div_residual(div_r), curl_residual(curl_r) {}
};

}  // namespace hodge
