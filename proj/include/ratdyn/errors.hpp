#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ratdyn {

// Caller violated an operation's precondition (bad degree, zero parameter, ...).
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Elements from two different coefficient fields were combined.
struct ContextMismatchError : PreconditionError {
    using PreconditionError::PreconditionError;
};

// An exact computation would exceed a configured size budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Root finding or certification did not converge.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Path tracking failed (step underflow, ambiguous fiber matching).
struct TrackingError : NumericalError {
    using NumericalError::NumericalError;
};

// An internal invariant was violated: sphere relation, Riemann-Hurwitz
// integrality, r1 != r2, and similar. Reported with exit code 3 by the CLI.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

// Malformed textual input. `position` is a 0-based byte offset.
struct ParseError : std::invalid_argument {
    ParseError(const std::string& what, std::size_t pos)
        : std::invalid_argument(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
    std::size_t position;
};

}  // namespace ratdyn
