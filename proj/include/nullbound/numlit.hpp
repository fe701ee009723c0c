#pragma once

// Exact integers that may be far too large to store: value = base + sum(sign * 2^exponent),
// where every exponent is itself an ExpNum. Anything whose magnitude is below 2^budget is
// kept as a plain GMP integer; above that, arithmetic is surgery on the term list.

#include <compare>
#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "nullbound/errors.hpp"

namespace nullbound {

inline constexpr std::uint64_t kDefaultConcreteBudgetBits = std::uint64_t{1} << 20;

/// Bit budget below which values are held concretely. Process-wide.
std::uint64_t concrete_budget_bits();
void set_concrete_budget_bits(std::uint64_t bits);

/// Swaps the budget for the lifetime of the scope (tests exercise the symbolic path this way).
class BudgetScope {
 public:
  explicit BudgetScope(std::uint64_t bits) : saved_{concrete_budget_bits()} {
    set_concrete_budget_bits(bits);
  }
  ~BudgetScope() { set_concrete_budget_bits(saved_); }
  BudgetScope(const BudgetScope&) = delete;
  BudgetScope& operator=(const BudgetScope&) = delete;

 private:
  std::uint64_t saved_;
};

enum class RenderMode { decimal, symbolic };

class ExpNum {
 public:
  struct Term {
    int sign;  // +1 or -1
    std::shared_ptr<const ExpNum> exponent;
  };

  ExpNum() = default;
  template <std::signed_integral T>
  ExpNum(T v) : ExpNum(mpz_class(static_cast<long>(v))) {}  // NOLINT(google-explicit-constructor)
  template <std::unsigned_integral T>
  ExpNum(T v)  // NOLINT(google-explicit-constructor)
      : ExpNum(mpz_class(static_cast<unsigned long>(v))) {}
  explicit ExpNum(const mpz_class& v);

  bool is_concrete() const { return terms_.empty(); }
  bool is_zero() const { return terms_.empty() && base_ == 0; }
  /// -1, 0 or +1.
  int sign() const;

  const std::vector<Term>& terms() const { return terms_; }
  /// The concrete tail; for a concrete value this is the value itself.
  const mpz_class& base() const { return base_; }

  /// Throws BudgetExceeded for symbolic values.
  const mpz_class& concrete() const;
  std::optional<std::int64_t> to_int64() const;
  std::optional<std::uint64_t> to_uint64() const;

  std::string render(RenderMode mode = RenderMode::symbolic) const;
  /// Accepts the symbolic grammar: integer | 2^integer | 2^(expr) | expr (+|-) expr.
  static ExpNum parse(std::string_view text);

  friend bool operator==(const ExpNum& a, const ExpNum& b);
  friend std::strong_ordering operator<=>(const ExpNum& a, const ExpNum& b);

  friend ExpNum operator+(const ExpNum& a, const ExpNum& b);
  friend ExpNum operator-(const ExpNum& a, const ExpNum& b);
  friend ExpNum operator-(const ExpNum& a);
  ExpNum& operator+=(const ExpNum& o) { return *this = *this + o; }
  ExpNum& operator-=(const ExpNum& o) { return *this = *this - o; }

 private:
  friend class ExpNumBuilder;
  std::vector<Term> terms_;
  mpz_class base_;
};

std::strong_ordering compare(const ExpNum& a, const ExpNum& b);

/// 2^e, e >= 0.
ExpNum pow2(const ExpNum& e);
/// x * 2^e, e >= 0.
ExpNum shl(const ExpNum& x, const ExpNum& e);
/// x * k for a concrete k.
ExpNum mul_small(const ExpNum& x, const mpz_class& k);
/// floor(log2(x)) for x > 0.
ExpNum floor_log2(const ExpNum& x);
/// Largest of the values; ties keep the first.
const ExpNum& max(const ExpNum& a, const ExpNum& b);

/// Non-adjacent form of n: (bit position, digit in {+1,-1}) from the lowest position up.
std::vector<std::pair<std::uint64_t, int>> naf_digits(const mpz_class& n);

/// Lightweight sequence position / counter. Always nonnegative.
class NatIndex {
 public:
  explicit NatIndex(ExpNum v);
  const ExpNum& value() const { return value_; }

 private:
  ExpNum value_;
};

}  // namespace nullbound
