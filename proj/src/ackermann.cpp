#include "nullbound/ackermann.hpp"

#include <vector>

namespace nullbound {

namespace {

ExpNum ack4(const ExpNum& n) {
  const auto k = n.to_uint64();
  if (!k || *k > kAck4Cap) throw BudgetExceeded("A(4, " + n.render() + ") is out of range");
  ExpNum v(13);
  for (std::uint64_t j = 0; j < *k; ++j) v = pow2(v + ExpNum(3)) - ExpNum(3);
  return v;
}

}  // namespace

ExpNum ack(unsigned m, const ExpNum& n) {
  if (n.sign() < 0) throw PreconditionViolated("Ackermann argument must be nonnegative");
  switch (m) {
    case 0: return n + ExpNum(1);
    case 1: return n + ExpNum(2);
    case 2: return mul_small(n, 2) + ExpNum(3);
    case 3: return pow2(n + ExpNum(3)) - ExpNum(3);
    case 4: return ack4(n);
    default: break;
  }
  const auto k = n.to_uint64();
  if (!k) throw BudgetExceeded("A(" + std::to_string(m) + ", " + n.render() + ") is out of range");
  ExpNum v = ack(m - 1, ExpNum(1));
  for (std::uint64_t j = 0; j < *k; ++j) v = ack(m - 1, v);
  return v;
}

ExpNum ack_recursive(unsigned m, std::uint64_t n, std::uint64_t step_budget) {
  // rows[j][x] = A(j, x), filled on demand.
  std::vector<std::vector<std::uint64_t>> rows(m + 1);
  std::uint64_t steps = 0;
  auto tick = [&] {
    if (++steps > step_budget) throw BudgetExceeded("Ackermann recursion exceeded its step budget");
  };
  auto value = [&](auto&& self, unsigned j, std::uint64_t x) -> std::uint64_t {
    tick();
    if (j == 0) return x + 1;
    auto& row = rows[j];
    while (row.size() <= x) {
      tick();
      const std::uint64_t next =
          row.empty() ? self(self, j - 1, 1) : self(self, j - 1, row.back());
      row.push_back(next);
    }
    return row[x];
  };
  return ExpNum(value(value, m, n));
}

ExpNum ack_lower_bound(unsigned m, const ExpNum& n) {
  if (m < 4) return ack(m, n);
  try {
    return ack(m, n);
  } catch (const BudgetExceeded&) {
  }
  const auto k = (n + ExpNum(static_cast<std::uint64_t>(m - 4))).to_uint64();
  return ack4(ExpNum(k && *k <= kAck4Cap ? *k : kAck4Cap));
}

}  // namespace nullbound
