#include "nullbound/bounds.hpp"

#include <algorithm>

#include "nullbound/ackermann.hpp"
#include "nullbound/antichain.hpp"

namespace nullbound {

namespace {

constexpr std::size_t kMaxReportedFailures = 8;

struct Coeffs {
  mpz_class c1, c2, c3, c4;
};

Coeffs coeffs(const Lemma& l, unsigned m) {
  const mpz_class d = l.d;
  switch (l.kind) {
    case LemmaKind::lexbound: return {d, m + d, m + d, d};
    case LemmaKind::lexbound2: return {1, mpz_class(m + 1), mpz_class(m + 1), 1};
    case LemmaKind::lexbound3: return {l.a, l.a + 1, l.a + 1, l.a};
    case LemmaKind::antiprop: return {1, 2, 2, 1};
  }
  return {};
}

mpz_class floor_q(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

mpz_class ceil_q(const mpq_class& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// lhs <= A(d, x). False when undecidable within the Ackermann budget.
bool below_ack(const ExpNum& lhs, unsigned d, const ExpNum& x) {
  if (x.sign() < 0) return false;
  try {
    return lhs <= ack(d, x);
  } catch (const BudgetExceeded&) {
    return lhs <= ack_lower_bound(d, x);
  }
}

// Both inequalities at index i.
std::pair<bool, bool> check_at(const Coeffs& k, unsigned d, const GrowthFunction& f, std::uint64_t i) {
  if (f.family() == GrowthFunction::Family::geometric) {
    const mpq_class a = f.eval_exact(i);
    const mpq_class b = f.eval_exact(i + 1);
    const bool first = mpq_class(k.c1) * b >= mpq_class(k.c2) * a;
    const mpq_class x = mpq_class(k.c4) * a - 1;
    const mpq_class lhs = mpq_class(k.c3) * b;
    bool second;
    if (x < 0) {
      second = false;
    } else if (d <= 2) {
      // A(0,x) = x+1, A(1,x) = x+2, A(2,x) = 2x+3 read on rationals.
      const mpq_class rhs = d == 0 ? mpq_class(x + 1) : d == 1 ? mpq_class(x + 2) : mpq_class(2 * x + 3);
      second = lhs <= rhs;
    } else {
      // Monotone in x, so rounding the argument down only makes the check stricter.
      second = below_ack(ExpNum(ceil_q(lhs)), d, ExpNum(floor_q(x)));
    }
    return {first, second};
  }
  const ExpNum a = f.eval(ExpNum(i));
  const ExpNum b = f.eval(ExpNum(i + 1));
  const bool first = mul_small(b, k.c1) >= mul_small(a, k.c2);
  const bool second = below_ack(mul_small(b, k.c3), d, mul_small(a, k.c4) - ExpNum(1));
  return {first, second};
}

std::optional<bool> persists(const Coeffs& k, unsigned d, const GrowthFunction& f, std::uint64_t last,
                             bool holds_at_last) {
  using Family = GrowthFunction::Family;
  mpq_class ratio;
  switch (f.family()) {
    case Family::pow2: ratio = 2; break;
    case Family::geometric: ratio = f.ratio(); break;
    case Family::affine: ratio = 1; break;
    case Family::table: return std::nullopt;
  }
  // Affine: c1 (f + p) - c2 f >= 0 for all f iff c1 >= c2. Otherwise f(i+1) = r f(i).
  const bool first = mpq_class(k.c1) * ratio >= mpq_class(k.c2);
  if (!holds_at_last) return false;
  bool second;
  if (d >= 3) {
    // The right side grows exponentially in f(i); beyond f >= 2 its slope dominates any linear left side.
    second = f.eval_exact(last) >= 2;
  } else {
    const mpq_class lhs_slope = mpq_class(k.c3) * ratio;
    const mpq_class rhs_slope = d == 2 ? mpq_class(2 * k.c4) : mpq_class(k.c4);
    second = lhs_slope <= rhs_slope;
  }
  return first && second;
}

// Least k with c * f(k) >= X, rendered per family.
BoundValue least_index(const GrowthFunction& f, const Expr& x_expr, const std::optional<ExpNum>& x,
                       const mpz_class& c) {
  using Family = GrowthFunction::Family;
  auto over = [](Expr num, const mpq_class& den) {
    return den == 1 ? num : num / Expr::rational(den);
  };
  std::optional<Expr> e;
  switch (f.family()) {
    case Family::pow2:
      if (f.ell().is_concrete()) {
        e = Expr::ceil(Expr::log(Expr::number(ExpNum(2)), over(x_expr, mpq_class(c * f.ell().concrete()))));
      } else {
        e = Expr::ceil(Expr::log(Expr::number(ExpNum(2)), x_expr / Expr::number(mul_small(f.ell(), c))));
      }
      break;
    case Family::geometric:
      e = Expr::ceil(Expr::log(Expr::rational(f.ratio()), over(x_expr, mpq_class(c) * f.ell_q())));
      break;
    case Family::affine: {
      const ExpNum shift = mul_small(f.offset(), c);
      Expr top = shift.is_zero() ? x_expr : x_expr - Expr::number(shift);
      const mpz_class den = c * f.slope();
      e = Expr::ceil(den == 1 ? top : top / Expr::number(ExpNum(den)));
      break;
    }
    case Family::table:
      e = Expr::ceil(Expr::finv(over(x_expr, mpq_class(c))));
      break;
  }
  BoundValue out{std::nullopt, *e};
  if (x) {
    try {
      const GrowthFunction g = c == 1 ? f : f.scale(c);
      out.value = g.inv_ceil(*x).value();
    } catch (const Unsupported&) {
    } catch (const BudgetExceeded&) {
    }
  }
  return out;
}

// ceil(f^{-1}(A(p, arg) / c)) with arg = k * f(1) - 1.
BoundValue closed_bound(const GrowthFunction& f, unsigned p, const mpq_class& k, const mpz_class& c) {
  const mpq_class arg = k * f.eval_exact(1) - 1;
  std::optional<ExpNum> x;
  Expr x_expr = Expr::ack(Expr::number(ExpNum(p)), Expr::rational(arg));
  if (arg.get_den() == 1 && arg >= 0) {
    const ExpNum n(arg.get_num());
    x_expr = Expr::ack(Expr::number(ExpNum(p)), Expr::number(n));
    try {
      x = ack(p, n);
      x_expr = Expr::number(*x);
    } catch (const BudgetExceeded&) {
    }
  }
  return least_index(f, x_expr, x, c);
}

ExpNum max_of(const ExpNum& a, const ExpNum& b) { return a < b ? b : a; }

}  // namespace

const char* to_string(LemmaKind k) {
  switch (k) {
    case LemmaKind::lexbound: return "lexbound";
    case LemmaKind::lexbound2: return "lexbound2";
    case LemmaKind::lexbound3: return "lexbound3";
    case LemmaKind::antiprop: return "antiprop";
  }
  return "unknown";
}

LemmaKind parse_lemma(std::string_view name) {
  for (auto k : {LemmaKind::lexbound, LemmaKind::lexbound2, LemmaKind::lexbound3, LemmaKind::antiprop}) {
    if (name == to_string(k)) return k;
  }
  throw ParseError("unknown lemma '" + std::string(name) + "'");
}

Verdict check_hypothesis(const Lemma& lemma, const GrowthFunction& f, unsigned m, std::uint64_t first,
                         std::uint64_t last) {
  if (first < 1) throw PreconditionViolated("hypotheses are stated for i >= 1");
  if (lemma.kind == LemmaKind::lexbound3 && lemma.a < 1) throw PreconditionViolated("lexbound3 needs a >= 1");
  const Coeffs k = coeffs(lemma, m);
  Verdict v;
  v.first = first;
  v.last = last;
  bool at_last = true;
  for (std::uint64_t i = first; i <= last; ++i) {
    const auto [one, two] = check_at(k, lemma.d, f, i);
    if (!one || !two) {
      v.holds = false;
      if (v.failures.size() < kMaxReportedFailures) v.failures.push_back({i, one ? 2 : 1});
    }
    if (i == last) at_last = one && two;
  }
  if (first <= last) v.persists = persists(k, lemma.d, f, last, at_last);
  return v;
}

BoundValue dickson_bound(const Lemma& lemma, const GrowthFunction& f, unsigned m, bool force) {
  if (!force && !check_hypothesis(lemma, f, m).holds) {
    throw HypothesisViolated(std::string(to_string(lemma.kind)) + " hypothesis fails for " + f.render());
  }
  const unsigned p = m + lemma.d;
  switch (lemma.kind) {
    case LemmaKind::lexbound: {
      if (lemma.d == 0) throw PreconditionViolated("lexbound needs d >= 1");
      return closed_bound(f, p, mpq_class(p), lemma.d);
    }
    case LemmaKind::lexbound2: return closed_bound(f, p, mpq_class(m + 1), 1);
    case LemmaKind::lexbound3: return closed_bound(f, p, mpq_class(lemma.a + 1), lemma.a);
    case LemmaKind::antiprop: return closed_bound(f, p, 2, 1);
  }
  return closed_bound(f, p, 1, 1);
}

BoundValue antichain_bound(const GrowthFunction& f, unsigned m, unsigned n, unsigned d, bool force) {
  if (n < 1) throw PreconditionViolated("n must be positive");
  if (n > 1 && d < 3) throw HypothesisViolated("several components need d >= 3");
  if (!force && !check_hypothesis(Lemma::antiprop(d), f, m).holds) {
    throw HypothesisViolated("antiprop hypothesis fails for " + f.render());
  }
  if (n == 1) return closed_bound(f, m + d, 2, 1);
  return closed_bound(f, m + d + 2, mpq_class(2 * n), n);
}

BoundReport nullstellensatz_report(unsigned m, unsigned n, const ExpNum& ell, const ExpNum& D,
                                   const mpq_class& c, ReportMode mode) {
  if (m < 1 || n < 1) throw PreconditionViolated("m and n must be positive");
  if (c <= 0) throw PreconditionViolated("the constant c must be positive");
  if (D.sign() < 0) throw PreconditionViolated("D must be nonnegative");
  const GrowthFunction f = GrowthFunction::pow2(ell);
  BoundReport r;
  r.m = m;
  r.n = n;
  r.ell = ell;
  r.D = D;
  r.c = c;
  r.mode = mode;

  if (mode == ReportMode::exact) {
    try {
      r.length = max_length(f, m, n).total;
      r.t_exact = shl(ell, *r.length + ExpNum(1));
    } catch (const Infeasible& e) {
      r.t_exact_error = e.what();
    } catch (const BudgetExceeded& e) {
      r.t_exact_error = e.what();
    }
  }

  // T < 2 A(m+3, 4l-1) for n = 1 and T < (2/n) A(m+5, 4nl-1) otherwise.
  const unsigned p = n == 1 ? m + 3 : m + 5;
  const ExpNum arg = mul_small(ell, 4 * n) - ExpNum(1);
  std::optional<ExpNum> x;
  try {
    x = ack(p, arg);
  } catch (const BudgetExceeded&) {
  }
  const Expr x_expr = x ? Expr::number(*x) : Expr::ack(Expr::number(ExpNum(p)), Expr::number(arg));
  if (n == 1) {
    r.t_upper = Expr::number(ExpNum(2)) * x_expr;
    if (x) r.t_upper_value = mul_small(*x, 2);
  } else {
    r.t_upper = Expr::number(ExpNum(2)) * x_expr / Expr::number(ExpNum(n));
  }
  if (r.t_exact) {
    const ExpNum lower = x ? *x : ack_lower_bound(p, arg);
    if (mul_small(*r.t_exact, n) <= mul_small(lower, 2)) r.exact_within_upper = true;
  }

  const Expr t = r.t_exact ? Expr::number(*r.t_exact) : r.t_upper;
  auto plus = [&](long k) {
    if (r.t_exact) return Expr::number(*r.t_exact + ExpNum(k));
    return k >= 0 ? t + Expr::number(ExpNum(k)) : t - Expr::number(ExpNum(-k));
  };
  const Expr mm = Expr::number(ExpNum(m));
  r.alpha_t = Expr::binom(plus(m), mm);
  r.alpha_t_minus_1 = Expr::binom(plus(static_cast<long>(m) - 1), mm);
  const Expr nn = Expr::number(ExpNum(n));
  const Expr three = Expr::number(ExpNum(3));
  r.b_expression = Expr::pow(nn * r.alpha_t_minus_1 * Expr::number(D),
                             Expr::pow(Expr::number(ExpNum(2)),
                                       Expr::rational(c) * Expr::pow(nn, three) * Expr::pow(r.alpha_t, three)));
  r.old_bound = Expr::ack(Expr::number(ExpNum(m + 8)), Expr::number(ExpNum(n) + max_of(max_of(ExpNum(n), ell), D)));

  const Verdict v = check_hypothesis(Lemma::antiprop(3), f, m);
  r.hypothesis_checks.push_back({"antiprop(d=3)", v.holds, v.first, v.last});
  r.constant_note = "c is the caller-supplied constant in the exponent of B";
  return r;
}

}  // namespace nullbound
