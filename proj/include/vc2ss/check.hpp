#pragma once

#include <stdexcept>
#include <string>

namespace vc2ss {

// Raised when an internal invariant fails. Invariant checks stay on in all
// build types: the solver's correctness argument leans on them, and the cost
// is negligible next to the searches they guard.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline void check(bool condition, const char* what) {
    if (!condition) throw InternalError(what);
}

inline void check(bool condition, const std::string& what) {
    if (!condition) throw InternalError(what);
}

// Raised when an exhaustive routine refuses an input as too large. Distinct
// from invalid_argument (no solution / bad input) and InternalError (defect).
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vc2ss
