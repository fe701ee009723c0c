#include "nullbound/macaulay.hpp"

#include <algorithm>
#include <numeric>

#include "nullbound/errors.hpp"

namespace nullbound {

namespace {

mpz_class binom(const mpz_class& n, unsigned long k) {
  mpz_class r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

// Largest x >= 0 with C(x + g, g) <= r, for r >= 1.
mpz_class largest_digit(const mpz_class& r, unsigned g) {
  if (g == 1) return r - 1;
  mpz_class lo = 0;
  mpz_class hi = 1;
  while (binom(hi + g, g) <= r) hi *= 2;
  while (hi - lo > 1) {
    const mpz_class mid = (lo + hi) / 2;
    if (binom(mid + g, g) <= r) lo = mid; else hi = mid;
  }
  return lo;
}

}  // namespace

mpz_class bracket(const BinRep& rep) {
  if (rep.gamma == 0) throw PreconditionViolated("binomial representation needs gamma > 0");
  if (rep.digits.empty() || rep.digits.size() > rep.gamma) {
    throw PreconditionViolated("binomial representation length must be in [1, gamma]");
  }
  mpz_class sum = 0;
  for (std::size_t j = 0; j < rep.digits.size(); ++j) {
    if (rep.digits[j] < 0 || (j > 0 && rep.digits[j] > rep.digits[j - 1])) {
      throw PreconditionViolated("binomial representation digits must be weakly decreasing and >= 0");
    }
    const unsigned long g = rep.gamma - j;
    sum += binom(rep.digits[j] + g, g);
  }
  return sum;
}

BinRep binrep(const mpz_class& a, unsigned gamma) {
  if (a < 1) throw PreconditionViolated("binomial representation needs a >= 1");
  if (gamma == 0) throw PreconditionViolated("binomial representation needs gamma > 0");
  BinRep rep{gamma, {}};
  mpz_class rest = a;
  for (unsigned g = gamma; g >= 1 && rest > 0; --g) {
    const mpz_class x = largest_digit(rest, g);
    rest -= binom(x + g, g);
    rep.digits.push_back(x);
  }
  return rep;
}

mpz_class macaulay_step(const mpz_class& a, unsigned gamma) {
  if (a < 0) throw PreconditionViolated("Macaulay step needs a >= 0");
  if (a == 0) return 0;
  BinRep rep = binrep(a, gamma);
  rep.gamma = gamma + 1;
  return bracket(rep);
}

bool check_sum_dominance(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                         unsigned gamma) {
  if (b.empty()) throw PreconditionViolated("right-hand list must be nonempty");
  const mpz_class& top = b.front();
  for (std::size_t j = 0; j + 1 < b.size(); ++j) {
    if (b[j] != top) throw PreconditionViolated("b_1, ..., b_{s-1} must be equal");
  }
  if (b.back() > top) throw PreconditionViolated("b_s must not exceed b_1");
  for (const auto& x : a) {
    if (x < 0 || x > top) throw PreconditionViolated("every a_i must lie in [0, b_1]");
  }
  if (b.back() < 0) throw PreconditionViolated("entries must be nonnegative");
  const mpz_class sa = std::accumulate(a.begin(), a.end(), mpz_class(0));
  const mpz_class sb = std::accumulate(b.begin(), b.end(), mpz_class(0));
  if (sa > sb) throw PreconditionViolated("sum of a exceeds sum of b");
  mpz_class lhs = 0;
  mpz_class rhs = 0;
  for (const auto& x : a) lhs += macaulay_step(x, gamma);
  for (const auto& x : b) rhs += macaulay_step(x, gamma);
  return lhs <= rhs;
}

}  // namespace nullbound
