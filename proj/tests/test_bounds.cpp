#include <doctest.h>

#include "nullbound/ackermann.hpp"
#include "nullbound/antichain.hpp"
#include "nullbound/bounds.hpp"
#include "nullbound/dickson.hpp"

using namespace nullbound;

namespace {

GrowthFunction F(const char* s) { return GrowthFunction::parse(s); }
GrowthFunction G(long bn, long bd, long ln, long ld) {
  return GrowthFunction::geometric(mpq_class(bn, bd), mpq_class(ln, ld));
}

}  // namespace

TEST_CASE("expression rendering") {
  const Expr x = Expr::number(ExpNum::parse("2^(2^65536)-3"));
  CHECK((x / Expr::number(ExpNum(2))).render() == "(2^(2^65536)-3)/2");
  CHECK(Expr::ceil(Expr::log(Expr::rational(mpq_class(3, 2)), x)).render() == "⌈log_{3/2}(2^(2^65536)-3)⌉");
  CHECK(Expr::pow(Expr::number(ExpNum::parse("2^70")), Expr::number(ExpNum(3))).render() == "(2^70)^3");
  CHECK(Expr::binom(Expr::symbol("T") + Expr::number(ExpNum(3)), Expr::number(ExpNum(3))).render() == "C(T+3,3)");
  CHECK((Expr::number(ExpNum(7)) - (Expr::number(ExpNum(1)) + Expr::number(ExpNum(2)))).render() == "7-(1+2)");
}

TEST_CASE("hypothesis checks") {
  const Verdict geo = check_hypothesis(Lemma::lexbound3(2, 3), G(3, 2, 2, 3), 2);
  CHECK(geo.holds);
  CHECK(geo.persists == true);
  CHECK_FALSE(check_hypothesis(Lemma::lexbound3(2, 1), G(2, 1, 1, 1), 2).holds);
  const Verdict p = check_hypothesis(Lemma::lexbound3(2, 1), F("pow2:1"), 2);
  CHECK_FALSE(p.holds);
  REQUIRE_FALSE(p.failures.empty());
  CHECK(p.failures.front().i == 1);
  CHECK(p.failures.front().inequality == 2);
  for (long l = 1; l <= 4; ++l) {
    const Verdict v = check_hypothesis(Lemma::antiprop(3), GrowthFunction::pow2(ExpNum(l)), 2, 1, 20);
    CHECK(v.holds);
    CHECK(v.persists == true);
  }
  // b must lie in (1, 2): a >= 1/(b-1) and a >= b/(2-b).
  for (long a = 1; a <= 6; ++a) {
    for (long num = 11; num <= 19; ++num) {
      const mpq_class b(num, 10);
      const bool region = a * (b - 1) >= 1 && a * (2 - b) >= b;
      CAPTURE(a);
      CAPTURE(num);
      CHECK(check_hypothesis(Lemma::lexbound3(2, a), G(num, 10, 1, 1), 2).holds == region);
    }
  }
  // antiprop: f(i+1) >= 2 f(i) is needed.
  CHECK_FALSE(check_hypothesis(Lemma::antiprop(3), F("affine:1:1"), 2).holds);
  CHECK_FALSE(check_hypothesis(Lemma::lexbound(1), F("affine:2:0"), 1).holds);
  CHECK_FALSE(check_hypothesis(Lemma::lexbound(3), F("table:1,2,4"), 2).persists.has_value());
}

TEST_CASE("Dicksonian bounds") {
  const BoundValue ex = dickson_bound(Lemma::lexbound3(2, 3), G(3, 2, 2, 3), 2);
  CHECK(ex.render() == "⌈log_{3/2}((2^(2^65536)-3)/2)⌉");
  CHECK_FALSE(ex.value);
  CHECK_THROWS_AS(dickson_bound(Lemma::lexbound(1), F("affine:2:0"), 1), HypothesisViolated);
  const BoundValue forced = dickson_bound(Lemma::lexbound(1), F("affine:2:0"), 1, true);
  CHECK(forced.value == ExpNum(5));
  CHECK(forced.render() == "⌈9/2⌉");
  const BoundValue pw = dickson_bound(Lemma::lexbound(3), F("pow2:3"), 1);
  // The argument is A(4, 23), a tower of 2s, divided by d*l = 9.
  const std::string text = pw.render();
  CHECK(text.rfind("⌈log_2((2^(2^(2^", 0) == 0);
  CHECK(text.size() >= 9);
  CHECK(text.find("-3)/9)⌉") != std::string::npos);
}

TEST_CASE("antichain bounds") {
  const BoundValue one = antichain_bound(F("pow2:1"), 1, 1, 3);
  CHECK(one.render() == "⌈log_2(2^(2^65536)-3)⌉");
  CHECK(one.value == ExpNum::parse("2^65536"));
  CHECK(antichain_bound(F("pow2:1"), 2, 1, 3).render() == "⌈log_2(A(5,3))⌉");
  CHECK(antichain_bound(F("pow2:2"), 2, 2, 3).render() == "⌈log_2(A(7,15)/4)⌉");
  CHECK_THROWS_AS(antichain_bound(F("pow2:1"), 2, 2, 2), HypothesisViolated);
  CHECK_THROWS_AS(antichain_bound(F("affine:1:1"), 2, 1, 3), HypothesisViolated);
  // The sandwich where both sides are computable.
  CHECK(max_length(F("pow2:1"), 1, 1).total < *one.value);
  const BoundValue two = antichain_bound(F("table:1,2,4,8,16,32,64"), 1, 1, 3, true);
  CHECK(two.render() == "⌈f^{-1}(65533)⌉");
  CHECK_FALSE(two.value);
}

TEST_CASE("embedding into two more coordinates keeps antichains") {
  for (unsigned n = 2; n <= 3; ++n) {
    const auto seq = extremal_sequence(F("affine:1:1"), 2, n, 200);
    SequenceRecord emb;
    emb.m = 4;
    emb.n = 1;
    for (const auto& t : seq) {
      Tuple e;
      e.coords = t.coords;
      e.coords.emplace_back(static_cast<std::uint64_t>(t.component));
      e.coords.emplace_back(static_cast<std::uint64_t>(n - 1 - t.component));
      emb.elements.push_back(e);
    }
    CHECK(verify(emb).antichain);
  }
}

TEST_CASE("report") {
  for (long l = 1; l <= 4; ++l) {
    const BoundReport r = nullstellensatz_report(2, 1, ExpNum(l), ExpNum(5), 1, ReportMode::exact);
    REQUIRE(r.t_exact);
    CHECK(*r.t_exact == shl(ExpNum(l), ExpNum(2 * l + 2)));
    CHECK(r.exact_within_upper == true);
  }
  const BoundReport three = nullstellensatz_report(3, 1, ExpNum(1), ExpNum(5), 1, ReportMode::exact);
  CHECK(three.t_exact->render() == "2^71");
  CHECK(three.alpha_t.render() == "C(2^71+3,3)");
  CHECK(three.alpha_t_minus_1.render() == "C(2^71+2,3)");
  CHECK(three.b_expression.render() == "(1*C(2^71+2,3)*5)^(2^(1*1^3*C(2^71+3,3)^3))");
  CHECK(three.old_bound.render() == "A(11,6)");
  CHECK(three.t_upper.render() == "2*A(6,3)");
  REQUIRE(three.hypothesis_checks.size() == 1);
  CHECK(three.hypothesis_checks[0].holds);

  const BoundReport four = nullstellensatz_report(3, 1, ExpNum(2), ExpNum(5), mpq_class(1, 2), ReportMode::exact);
  CHECK(four.t_exact->render() == "2^(2^(2^520+520)+2^520+521)");
  CHECK(four.b_expression.render().find("1/2*") != std::string::npos);

  const BoundReport upper = nullstellensatz_report(3, 1, ExpNum(1), ExpNum(5), 1, ReportMode::upper);
  CHECK_FALSE(upper.t_exact);
  CHECK(upper.alpha_t.render() == "C(2*A(6,3)+3,3)");

  const BoundReport far = nullstellensatz_report(3, 2, ExpNum(1), ExpNum(5), 1, ReportMode::exact);
  CHECK_FALSE(far.t_exact);
  CHECK(far.t_exact_error);
  CHECK(far.t_upper.render() == "2*A(8,7)/2");

  // Same inputs, same rendering.
  const BoundReport again = nullstellensatz_report(3, 1, ExpNum(1), ExpNum(5), 1, ReportMode::exact);
  CHECK(again.b_expression.render() == three.b_expression.render());
  CHECK_THROWS_AS(nullstellensatz_report(3, 1, ExpNum(1), ExpNum(5), 0, ReportMode::exact), PreconditionViolated);
}
