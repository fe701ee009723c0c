#include <doctest.h>

#include <algorithm>
#include <functional>

#include "nullbound/errors.hpp"
#include "nullbound/macaulay.hpp"

using namespace nullbound;

namespace {

BinRep rep(unsigned g, std::vector<long> d) {
  BinRep r{g, {}};
  for (long x : d) r.digits.emplace_back(x);
  return r;
}

}  // namespace

TEST_CASE("bracket and binrep examples") {
  CHECK(bracket(rep(1, {4})) == 5);
  CHECK(bracket(rep(2, {1, 0})) == 4);
  CHECK(bracket(rep(2, {0})) == 1);
  CHECK(binrep(5, 1) == rep(1, {4}));
  CHECK(binrep(4, 2) == rep(2, {1, 0}));
  for (unsigned g = 1; g <= 6; ++g) CHECK(binrep(1, g) == rep(g, {0}));
  CHECK_THROWS_AS(bracket(rep(2, {0, 1})), PreconditionViolated);
  CHECK_THROWS_AS(bracket(rep(1, {1, 0})), PreconditionViolated);
  CHECK_THROWS_AS(binrep(0, 2), PreconditionViolated);
}

TEST_CASE("macaulay step examples") {
  CHECK(macaulay_step(0, 3) == 0);
  CHECK(macaulay_step(5, 1) == 15);
  for (unsigned g = 1; g <= 8; ++g) CHECK(macaulay_step(1, g) == 1);
}

TEST_CASE("sum dominance examples") {
  CHECK(check_sum_dominance({2, 2}, {3, 1}, 2));
  CHECK(check_sum_dominance({0}, {0}, 1));
  CHECK_THROWS_AS(check_sum_dominance({4}, {3, 1}, 2), PreconditionViolated);
  CHECK_THROWS_AS(check_sum_dominance({1}, {2, 3, 1}, 2), PreconditionViolated);
  CHECK_THROWS_AS(check_sum_dominance({3, 3}, {3, 1}, 2), PreconditionViolated);
}

TEST_CASE("property: bijection and order") {
  for (unsigned g = 1; g <= 6; ++g) {
    BinRep prev;
    for (long a = 1; a <= 10000; ++a) {
      const BinRep r = binrep(a, g);
      REQUIRE(bracket(r) == a);
      if (a > 1) {
        REQUIRE(std::lexicographical_compare(prev.digits.begin(), prev.digits.end(),
                                             r.digits.begin(), r.digits.end()));
      }
      prev = r;
    }
  }
  // bracket(binrep) on every valid rep with small digits.
  for (unsigned g = 1; g <= 4; ++g) {
    std::function<void(BinRep&)> walk = [&](BinRep& r) {
      if (!r.digits.empty()) REQUIRE(binrep(bracket(r), g) == r);
      if (r.digits.size() == g) return;
      const long cap = r.digits.empty() ? 6 : r.digits.back().get_si();
      for (long x = 0; x <= cap; ++x) {
        r.digits.emplace_back(x);
        walk(r);
        r.digits.pop_back();
      }
    };
    BinRep r{g, {}};
    walk(r);
  }
}

// The pair inequality is a convexity statement at gamma = 1 but breaks at gamma = 2 and 3.
TEST_CASE("property: pair inequality and monotone step") {
  for (long b1 = 0; b1 <= 30; ++b1) {
    for (long b2 = 0; b2 <= 30; ++b2) {
      for (long a1 = 0; a1 <= b1; ++a1) {
        for (long a2 = 0; a2 <= b1; ++a2) {
          if (a1 + a2 > b1 + b2) continue;
          REQUIRE(macaulay_step(a1, 1) + macaulay_step(a2, 1) <=
                  macaulay_step(b1, 1) + macaulay_step(b2, 1));
        }
      }
    }
  }
  CHECK(macaulay_step(3, 2) + macaulay_step(3, 2) == 8);
  CHECK(macaulay_step(4, 2) + macaulay_step(2, 2) == 7);
  CHECK_FALSE(check_sum_dominance({3, 3}, {4, 2}, 2));
  CHECK_FALSE(check_sum_dominance({4, 4}, {5, 3}, 3));
  for (unsigned g = 1; g <= 6; ++g) {
    for (long a = 0; a < 500; ++a) REQUIRE(macaulay_step(a, g) <= macaulay_step(a + 1, g));
  }
}

TEST_CASE("property: exhaustive sum dominance grid") {
  std::vector<std::vector<mpz_class>> lists;
  std::function<void(std::vector<mpz_class>&)> gen = [&](std::vector<mpz_class>& cur) {
    if (!cur.empty()) lists.push_back(cur);
    if (cur.size() == 3) return;
    for (long x = 0; x <= 5; ++x) {
      cur.emplace_back(x);
      gen(cur);
      cur.pop_back();
    }
  };
  std::vector<mpz_class> cur;
  gen(cur);
  std::vector<long> failures(5, 0);
  for (unsigned g = 1; g <= 4; ++g) {
    for (const auto& a : lists) {
      for (const auto& b : lists) {
        const bool equal_head = std::all_of(b.begin(), b.end() - 1, [&](const mpz_class& x) { return x == b[0]; });
        const bool dominated = std::all_of(a.begin(), a.end(), [&](const mpz_class& x) { return x <= b[0]; });
        mpz_class sa = 0, sb = 0;
        for (const auto& x : a) sa += x;
        for (const auto& x : b) sb += x;
        if (!equal_head || b.back() > b[0] || !dominated || sa > sb) continue;
        if (!check_sum_dominance(a, b, g)) ++failures[g];
      }
    }
  }
  CHECK(failures[1] == 0);
  CHECK(failures[2] == 8);
  CHECK(failures[3] == 8);
  CHECK(failures[4] == 0);
}
