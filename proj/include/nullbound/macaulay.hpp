#pragma once

#include <vector>

#include <gmpxx.h>

namespace nullbound {

/// <a_0, ..., a_k>_gamma with a_0 >= ... >= a_k >= 0 and k < gamma.
struct BinRep {
  unsigned gamma = 1;
  std::vector<mpz_class> digits;

  friend bool operator==(const BinRep&, const BinRep&) = default;
};

/// Sum of C(a_j + gamma - j, gamma - j). Throws PreconditionViolated on a malformed rep.
mpz_class bracket(const BinRep& rep);
/// The gamma-binomial representation of a >= 1 (greedy).
BinRep binrep(const mpz_class& a, unsigned gamma);
/// a^<gamma>: the gamma-representation re-bracketed at gamma + 1; 0 maps to 0.
mpz_class macaulay_step(const mpz_class& a, unsigned gamma);

/// Compares sum a_i^<gamma> against sum b_j^<gamma> after validating
/// b_1 = ... = b_{s-1} >= b_s, b_1 >= every a_i and sum a <= sum b.
bool check_sum_dominance(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                         unsigned gamma);

}  // namespace nullbound
