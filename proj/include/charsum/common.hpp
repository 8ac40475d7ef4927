#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace charsum {

using i64 = std::int64_t;
using i128 = __int128;

// Raised when a spec violates the assumptions the evaluation theory needs
// (even modulus, p | B, v_p(A) >= m, non-primitive chi2, ...).
struct UnsupportedSpec : std::domain_error {
    explicit UnsupportedSpec(const std::string& msg) : std::domain_error(msg) {}
};

// Raised when an argument that must be a unit is divisible by p.
struct NotAUnit : std::domain_error {
    explicit NotAUnit(const std::string& msg) : std::domain_error(msg) {}
};

// Raised when an oracle or table build would exceed the configured budget.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an exact computation would not fit the coefficient range.
// Computations are checked, never silently wrapped.
struct CoefficientOverflow : std::overflow_error {
    explicit CoefficientOverflow(const std::string& msg) : std::overflow_error(msg) {}
};

// Internal consistency failure (e.g. a critical point that does not divide
// to the depth the theory guarantees).  Always a bug or a broken invariant.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

inline i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline i64 mod_floor(i64 a, i64 b) {
    i64 r = a % b;
    if (r < 0) r += b;
    return r;
}

}  // namespace charsum
