#pragma once
#include <stdexcept>
#include <string>

namespace pntlab {

// Base class for all toolkit failures.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input lies outside an operation's mathematical domain.
struct domain_error : error {
    using error::error;
};

// A configured resource budget (memory, term count) would be exceeded.
// The message names the budget that was hit.
struct resource_error : error {
    using error::error;
};

// Evaluation at (or too close to) a pole.
struct pole_error : domain_error {
    using domain_error::domain_error;
};

// Request beyond the range covered by a precomputed structure.
struct coverage_error : error {
    using error::error;
};

// Invalid contour placement (pole inside the contour, bad geometry).
struct contour_error : error {
    using error::error;
};

// Iterative refinement did not converge.
struct refinement_error : error {
    using error::error;
};

// A numeric procedure failed to meet its tolerance.
struct numeric_error : error {
    using error::error;
};

} // namespace pntlab
