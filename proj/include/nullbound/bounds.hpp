#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "nullbound/expr.hpp"
#include "nullbound/growth.hpp"
#include "nullbound/numlit.hpp"

namespace nullbound {

/// Growth hypotheses of the closed-form length bounds. Each has the shape
///   c1 f(i+1) >= c2 f(i)   and   c3 f(i+1) <= A(d, c4 f(i) - 1)   for i > 0.
enum class LemmaKind { lexbound, lexbound2, lexbound3, antiprop };
const char* to_string(LemmaKind k);
LemmaKind parse_lemma(std::string_view name);

struct Lemma {
  LemmaKind kind = LemmaKind::lexbound;
  unsigned d = 0;
  /// Only read by lexbound3.
  mpz_class a = 1;

  static Lemma lexbound(unsigned d) { return {LemmaKind::lexbound, d, 1}; }
  static Lemma lexbound2(unsigned d) { return {LemmaKind::lexbound2, d, 1}; }
  static Lemma lexbound3(unsigned d, mpz_class a) { return {LemmaKind::lexbound3, d, std::move(a)}; }
  static Lemma antiprop(unsigned d) { return {LemmaKind::antiprop, d, 1}; }
};

struct HypothesisFailure {
  std::uint64_t i;
  /// 1: the ratio condition, 2: the Ackermann condition.
  int inequality;
};

struct Verdict {
  bool holds = true;
  std::uint64_t first = 1;
  std::uint64_t last = 0;
  /// At most 8 failures, in order of i.
  std::vector<HypothesisFailure> failures;
  /// Whether a family-specific sufficient check shows the conditions persist past `last`;
  /// empty when no such check applies.
  std::optional<bool> persists;
};

/// Exact check for every i in [first, last]. Geometric f is evaluated without flooring.
Verdict check_hypothesis(const Lemma& lemma, const GrowthFunction& f, unsigned m,
                         std::uint64_t first = 1, std::uint64_t last = 20);

/// A strict upper bound: the value when it can be evaluated, and always a rendering.
struct BoundValue {
  std::optional<ExpNum> value;
  Expr expression;
  std::string render() const { return expression.render(); }
};

/// Strict bound on the Dicksonian length for the lemma's growth regime. Throws
/// HypothesisViolated if the sampled hypothesis fails and force is false.
BoundValue dickson_bound(const Lemma& lemma, const GrowthFunction& f, unsigned m, bool force = false);

/// Strict bound on the antichain length in Z^m x n via the antiprop hypothesis.
BoundValue antichain_bound(const GrowthFunction& f, unsigned m, unsigned n, unsigned d, bool force = false);

enum class ReportMode { exact, upper };

struct HypothesisCheck {
  std::string lemma;
  bool holds;
  std::uint64_t first;
  std::uint64_t last;
};

struct BoundReport {
  unsigned m = 1;
  unsigned n = 1;
  ExpNum ell;
  ExpNum D;
  mpq_class c;
  ReportMode mode = ReportMode::exact;

  std::optional<ExpNum> length;
  std::optional<ExpNum> t_exact;
  /// Why the exact value is missing, if it is.
  std::optional<std::string> t_exact_error;
  Expr t_upper = Expr::symbol("T");
  std::optional<ExpNum> t_upper_value;
  /// T_exact <= T_upper, when a lower estimate of T_upper settles it.
  std::optional<bool> exact_within_upper;
  Expr alpha_t = Expr::symbol("alpha_T");
  Expr alpha_t_minus_1 = Expr::symbol("alpha_{T-1}");
  Expr b_expression = Expr::symbol("B");
  Expr old_bound = Expr::symbol("B_old");
  std::vector<HypothesisCheck> hypothesis_checks;
  std::string constant_note;
};

/// T, alpha_T, alpha_{T-1}, the shape of B with the caller's constant c, and the older bound.
BoundReport nullstellensatz_report(unsigned m, unsigned n, const ExpNum& ell, const ExpNum& D,
                                   const mpq_class& c, ReportMode mode);

}  // namespace nullbound
