#include "nullbound/numlit.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <climits>

namespace nullbound {

namespace {

std::atomic<std::uint64_t> g_budget_bits{kDefaultConcreteBudgetBits};

// |v| < 2^bits
bool fits_bits(const mpz_class& v, std::uint64_t bits) {
  return v == 0 || mpz_sizeinbase(v.get_mpz_t(), 2) <= bits;
}

mpz_class pow2_mpz(std::uint64_t e) {
  mpz_class r;
  mpz_setbit(r.get_mpz_t(), e);
  return r;
}

const mpz_class& two_pow_64() {
  static const mpz_class v = pow2_mpz(64);
  return v;
}

}  // namespace

std::uint64_t concrete_budget_bits() { return g_budget_bits.load(std::memory_order_relaxed); }

void set_concrete_budget_bits(std::uint64_t bits) {
  if (bits < 8) throw PreconditionViolated("concrete budget must be at least 8 bits");
  g_budget_bits.store(bits, std::memory_order_relaxed);
}

struct Pending {
  ExpNum exp;
  mpz_class coef;
};

class ExpNumBuilder {
 public:
  // Concrete exponents within this distance above the budget are accumulated densely.
  static constexpr unsigned long kDenseSpan = 1UL << 24;

  static ExpNum concrete(mpz_class v) {
    ExpNum r;
    r.base_ = std::move(v);
    return r;
  }

  // Canonical form of base + sum(coef * 2^exp). Terms end up with exponents >= budget, in
  // non-adjacent form, and the tail is the centered residue modulo 2^budget.
  static ExpNum build(std::vector<Pending> pending, mpz_class base) {
    const std::uint64_t budget = concrete_budget_bits();
    const mpz_class budget_mpz{static_cast<unsigned long>(budget)};

    std::vector<Pending> sym;
    for (auto& p : pending) {
      if (p.coef == 0) continue;
      if (p.exp.sign() < 0) throw PreconditionViolated("negative exponent in ExpNum term");
      if (p.exp.is_concrete() && p.exp.base_ < budget_mpz) {
        mpz_class t;
        mpz_mul_2exp(t.get_mpz_t(), p.coef.get_mpz_t(), p.exp.base_.get_ui());
        base += t;
      } else {
        sym.push_back(std::move(p));
      }
    }
    if (sym.empty() && fits_bits(base, budget)) return concrete(std::move(base));

    mpz_class tail;
    mpz_fdiv_r_2exp(tail.get_mpz_t(), base.get_mpz_t(), budget);
    if (mpz_tstbit(tail.get_mpz_t(), budget - 1)) tail -= pow2_mpz(budget);
    mpz_class high = base - tail;
    mpz_fdiv_q_2exp(high.get_mpz_t(), high.get_mpz_t(), budget);
    const bool all_concrete = std::all_of(sym.begin(), sym.end(), [&](const Pending& p) {
      return p.exp.is_concrete() && p.exp.base_ - budget_mpz < kDenseSpan;
    });
    if (all_concrete) {
      for (const auto& p : sym) {
        mpz_class t;
        mpz_mul_2exp(t.get_mpz_t(), p.coef.get_mpz_t(), mpz_class(p.exp.base_ - budget_mpz).get_ui());
        high += t;
      }
      sym.clear();
    }
    for (auto [pos, digit] : naf_digits(high)) {
      sym.push_back({ExpNum(budget + pos), mpz_class(digit)});
    }
    if (all_concrete) return finish(std::move(sym), std::move(tail), budget_mpz);

    std::sort(sym.begin(), sym.end(),
              [](const Pending& a, const Pending& b) { return compare(a.exp, b.exp) < 0; });
    std::vector<Pending> merged;
    for (auto& p : sym) {
      if (!merged.empty() && merged.back().exp == p.exp) {
        merged.back().coef += p.coef;
      } else {
        merged.push_back(std::move(p));
      }
    }

    // Carry pass from the lowest exponent up; the digit choice looks one position ahead.
    for (std::size_t idx = 0; idx < merged.size(); ++idx) {
      mpz_class c = merged[idx].coef;
      if (c == 0) continue;
      const ExpNum next_exp = merged[idx].exp + ExpNum(1);
      const bool adjacent = idx + 1 < merged.size() && merged[idx + 1].exp == next_exp;
      int digit = 0;
      if (mpz_odd_p(c.get_mpz_t())) {
        mpz_class window = c + 2 * (adjacent ? merged[idx + 1].coef : mpz_class(0));
        digit = mpz_fdiv_ui(window.get_mpz_t(), 4) == 1 ? 1 : -1;
      }
      mpz_class carry = c - digit;
      mpz_divexact_ui(carry.get_mpz_t(), carry.get_mpz_t(), 2);
      merged[idx].coef = digit;
      if (carry != 0) {
        if (adjacent) {
          merged[idx + 1].coef += carry;
        } else {
          merged.insert(merged.begin() + static_cast<std::ptrdiff_t>(idx) + 1,
                        Pending{next_exp, carry});
        }
      }
    }

    return finish(std::move(merged), std::move(tail), budget_mpz);
  }

  // `digits` ascending and already non-adjacent.
  static ExpNum finish(std::vector<Pending> digits, mpz_class tail, const mpz_class& budget_mpz) {
    ExpNum out;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
      if (it->coef == 0) continue;
      out.terms_.push_back({it->coef > 0 ? 1 : -1, std::make_shared<const ExpNum>(it->exp)});
    }
    if (out.terms_.empty()) return concrete(std::move(tail));

    const ExpNum& lead = *out.terms_.front().exponent;
    if (lead.is_concrete() && lead.base_ <= budget_mpz + 1) {
      mpz_class v = tail;
      for (const auto& t : out.terms_) {
        mpz_class p = pow2_mpz(t.exponent->base_.get_ui());
        if (t.sign > 0) v += p; else v -= p;
      }
      if (fits_bits(v, concrete_budget_bits())) return concrete(std::move(v));
    }
    out.base_ = std::move(tail);
    return out;
  }

  static std::vector<Pending> pending_of(const ExpNum& x, int flip) {
    std::vector<Pending> out;
    out.reserve(x.terms_.size());
    for (const auto& t : x.terms_) out.push_back({*t.exponent, mpz_class(t.sign * flip)});
    return out;
  }

  static std::vector<Pending> shifted_pending(const ExpNum& x, const ExpNum& e) {
    std::vector<Pending> out;
    for (const auto& t : x.terms_) out.push_back({*t.exponent + e, mpz_class(t.sign)});
    return out;
  }
};

ExpNum::ExpNum(const mpz_class& v) {
  if (fits_bits(v, concrete_budget_bits())) {
    base_ = v;
  } else {
    *this = ExpNumBuilder::build({}, v);
  }
}

int ExpNum::sign() const {
  if (!terms_.empty()) return terms_.front().sign;
  return sgn(base_);
}

const mpz_class& ExpNum::concrete() const {
  if (!is_concrete()) throw BudgetExceeded("value " + render() + " exceeds the concrete budget");
  return base_;
}

std::optional<std::int64_t> ExpNum::to_int64() const {
  if (!is_concrete() || !base_.fits_slong_p()) return std::nullopt;
  return base_.get_si();
}

std::optional<std::uint64_t> ExpNum::to_uint64() const {
  if (!is_concrete() || base_ < 0 || !base_.fits_ulong_p()) return std::nullopt;
  return base_.get_ui();
}

bool operator==(const ExpNum& a, const ExpNum& b) {
  if (a.terms_.size() != b.terms_.size() || a.base_ != b.base_) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].sign != b.terms_[i].sign) return false;
    if (a.terms_[i].exponent != b.terms_[i].exponent &&
        !(*a.terms_[i].exponent == *b.terms_[i].exponent)) {
      return false;
    }
  }
  return true;
}

std::strong_ordering operator<=>(const ExpNum& a, const ExpNum& b) {
  if (a.is_concrete() && b.is_concrete()) {
    const int c = cmp(a.base_, b.base_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  if (a == b) return std::strong_ordering::equal;
  return (a - b).sign() < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::strong_ordering compare(const ExpNum& a, const ExpNum& b) { return a <=> b; }

ExpNum operator+(const ExpNum& a, const ExpNum& b) {
  if (a.is_concrete() && b.is_concrete()) {
    mpz_class s = a.base_ + b.base_;
    if (fits_bits(s, concrete_budget_bits())) return ExpNumBuilder::concrete(std::move(s));
  }
  auto pending = ExpNumBuilder::pending_of(a, 1);
  auto rest = ExpNumBuilder::pending_of(b, 1);
  pending.insert(pending.end(), std::make_move_iterator(rest.begin()),
                 std::make_move_iterator(rest.end()));
  return ExpNumBuilder::build(std::move(pending), a.base_ + b.base_);
}

ExpNum operator-(const ExpNum& a, const ExpNum& b) {
  if (a.is_concrete() && b.is_concrete()) {
    mpz_class s = a.base_ - b.base_;
    if (fits_bits(s, concrete_budget_bits())) return ExpNumBuilder::concrete(std::move(s));
  }
  auto pending = ExpNumBuilder::pending_of(a, 1);
  auto rest = ExpNumBuilder::pending_of(b, -1);
  pending.insert(pending.end(), std::make_move_iterator(rest.begin()),
                 std::make_move_iterator(rest.end()));
  return ExpNumBuilder::build(std::move(pending), a.base_ - b.base_);
}

ExpNum operator-(const ExpNum& a) {
  if (a.is_concrete()) return ExpNumBuilder::concrete(-a.base_);
  return ExpNumBuilder::build(ExpNumBuilder::pending_of(a, -1), -a.base_);
}

ExpNum shl(const ExpNum& x, const ExpNum& e) {
  if (e.sign() < 0) throw PreconditionViolated("shl by a negative amount");
  if (e.is_zero() || x.is_zero()) return x;
  auto pending = ExpNumBuilder::shifted_pending(x, e);
  const std::uint64_t budget = concrete_budget_bits();
  if (e.is_concrete() && e.base() <= mpz_class(static_cast<unsigned long>(budget))) {
    mpz_class b;
    mpz_mul_2exp(b.get_mpz_t(), x.base().get_mpz_t(), e.base().get_ui());
    return ExpNumBuilder::build(std::move(pending), std::move(b));
  }
  for (auto [pos, digit] : naf_digits(x.base())) {
    pending.push_back({e + ExpNum(pos), mpz_class(digit)});
  }
  return ExpNumBuilder::build(std::move(pending), mpz_class(0));
}

ExpNum pow2(const ExpNum& e) { return shl(ExpNum(1), e); }

ExpNum mul_small(const ExpNum& x, const mpz_class& k) {
  if (!fits_bits(k, concrete_budget_bits())) {
    throw PreconditionViolated("mul_small factor exceeds the concrete budget");
  }
  if (x.is_concrete()) return ExpNum(x.base() * k);
  const auto digits = naf_digits(k);
  std::vector<Pending> pending;
  for (const auto& t : x.terms()) {
    for (auto [pos, digit] : digits) {
      pending.push_back({*t.exponent + ExpNum(pos), mpz_class(t.sign * digit)});
    }
  }
  return ExpNumBuilder::build(std::move(pending), x.base() * k);
}

ExpNum floor_log2(const ExpNum& x) {
  if (x.sign() <= 0) throw PreconditionViolated("floor_log2 of a nonpositive value");
  if (x.is_concrete()) {
    return ExpNum(static_cast<std::uint64_t>(mpz_sizeinbase(x.base().get_mpz_t(), 2) - 1));
  }
  const ExpNum& lead = *x.terms().front().exponent;
  return x >= pow2(lead) ? lead : lead - ExpNum(1);
}

const ExpNum& max(const ExpNum& a, const ExpNum& b) { return b > a ? b : a; }

std::vector<std::pair<std::uint64_t, int>> naf_digits(const mpz_class& n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  if (n == 0) return out;
  const int flip = n < 0 ? -1 : 1;
  const mpz_class a = abs(n);
  const mpz_class half = a >> 1;
  const mpz_class three_half = a + half;
  const mpz_class c = half ^ three_half;
  const mpz_class plus = three_half & c;
  const mpz_class minus = half & c;
  mp_bitcnt_t p = mpz_scan1(plus.get_mpz_t(), 0);
  mp_bitcnt_t q = mpz_scan1(minus.get_mpz_t(), 0);
  constexpr mp_bitcnt_t kNone = ~static_cast<mp_bitcnt_t>(0);
  while (p != kNone || q != kNone) {
    if (q == kNone || (p != kNone && p < q)) {
      out.emplace_back(p, flip);
      p = mpz_scan1(plus.get_mpz_t(), p + 1);
    } else {
      out.emplace_back(q, -flip);
      q = mpz_scan1(minus.get_mpz_t(), q + 1);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------------------
// Rendering and parsing

namespace {

struct Atom {
  bool negative;
  std::string text;
};

// Concrete values print in decimal below 2^64; larger ones peel off the nearest power of
// two (ties go down) until the remainder is small.
void concrete_atoms(const mpz_class& v, std::vector<Atom>& out) {
  mpz_class rem = v;
  while (abs(rem) >= two_pow_64()) {
    const mpz_class a = abs(rem);
    const std::uint64_t top = mpz_sizeinbase(a.get_mpz_t(), 2) - 1;
    const mpz_class lo = pow2_mpz(top);
    const mpz_class hi = pow2_mpz(top + 1);
    const std::uint64_t p = (hi - a < a - lo) ? top + 1 : top;
    const bool negative = rem < 0;
    out.push_back({negative, "2^" + std::to_string(p)});
    if (negative) rem += pow2_mpz(p); else rem -= pow2_mpz(p);
  }
  if (rem != 0) out.push_back({rem < 0, mpz_class(abs(rem)).get_str()});
}

std::string exponent_atom(const ExpNum& e) {
  if (e.is_concrete() && abs(e.base()) < two_pow_64()) return e.base().get_str();
  return "(" + e.render(RenderMode::symbolic) + ")";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_{text} {}

  ExpNum parse_all() {
    ExpNum v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return v;
  }

 private:
  ExpNum expr() {
    skip_ws();
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
    }
    ExpNum acc = atom();
    if (negative) acc = -acc;
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      ExpNum rhs = atom();
      acc = c == '+' ? acc + rhs : acc - rhs;
    }
    return acc;
  }

  ExpNum atom() {
    skip_ws();
    const std::string digits = number();
    skip_ws();
    if (peek() != '^') return ExpNum(mpz_class(digits));
    if (digits != "2") fail("only base 2 powers are supported");
    ++pos_;
    skip_ws();
    ExpNum e;
    if (peek() == '(') {
      ++pos_;
      e = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
    } else {
      e = ExpNum(mpz_class(number()));
    }
    if (e.sign() < 0) fail("negative exponent");
    return pow2(e);
  }

  std::string number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse number '" + std::string(text_) + "' at offset " +
                     std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string ExpNum::render(RenderMode mode) const {
  if (mode == RenderMode::decimal) {
    if (!is_concrete()) {
      throw BudgetExceeded("decimal rendering requires a value within the concrete budget");
    }
    return base_.get_str();
  }
  if (is_zero()) return "0";
  std::vector<Atom> atoms;
  for (const auto& t : terms_) atoms.push_back({t.sign < 0, "2^" + exponent_atom(*t.exponent)});
  concrete_atoms(base_, atoms);
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].negative) out += '-';
    else if (i > 0) out += '+';
    out += atoms[i].text;
  }
  return out;
}

ExpNum ExpNum::parse(std::string_view text) { return Parser(text).parse_all(); }

NatIndex::NatIndex(ExpNum v) : value_{std::move(v)} {
  if (value_.sign() < 0) throw PreconditionViolated("index must be nonnegative");
}

}  // namespace nullbound
