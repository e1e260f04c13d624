#pragma once

#include <stdexcept>
#include <string>

namespace dynsig {

/// Unknown cell id or state label.
struct LookupError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Operands that do not fit together: different state spaces, horizons,
/// or a problem whose dimensions disagree with the signal.
struct MismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A value that violates its type's invariants.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An operation called outside its precondition.
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Exhaustive enumeration would exceed the configured budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dynsig
