#pragma once

#include <cstdint>

#include "nullbound/numlit.hpp"

namespace nullbound {

/// A(m, n) from closed forms for m <= 4 and bounded iteration above.
/// Throws BudgetExceeded when the value cannot be represented.
ExpNum ack(unsigned m, const ExpNum& n);

/// Memoized direct recursion with a step budget; for cross-checking ack().
ExpNum ack_recursive(unsigned m, std::uint64_t n, std::uint64_t step_budget = 10'000'000);

/// A value <= A(m, n), exact whenever ack(m, n) is representable. Uses A(m+1, n) >= A(m, n+1).
ExpNum ack_lower_bound(unsigned m, const ExpNum& n);

/// Largest n for which A(4, n) is built.
inline constexpr std::uint64_t kAck4Cap = 64;

}  // namespace nullbound
