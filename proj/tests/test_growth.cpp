#include <doctest.h>

#include "nullbound/growth.hpp"

using nullbound::ExpNum;
using nullbound::GrowthFunction;

namespace {

ExpNum P(const char* s) { return ExpNum::parse(s); }
GrowthFunction F(const char* s) { return GrowthFunction::parse(s); }

std::vector<GrowthFunction> sample_families() {
  return {F("pow2:1"), F("pow2:3"), F("affine:1:0"), F("affine:2:5"), F("affine:7:0"),
          F("geom:3/2:2/3"), F("geom:2/1:5/1"), F("geom:5/3:7/2"), F("table:1,2,4,8,9,30")};
}

}  // namespace

TEST_CASE("eval") {
  CHECK(F("pow2:1").eval(3) == ExpNum(8));
  CHECK(F("pow2:2").eval(P("2^520+519")) == P("2^(2^520+520)"));
  CHECK(F("affine:1:0").eval(5) == ExpNum(5));
  CHECK(F("geom:3/2:2/3").eval(1) == ExpNum(1));
  CHECK(F("geom:3/2:2/3").eval(2) == ExpNum(1));
  CHECK(F("geom:3/2:2/3").eval(3) == ExpNum(2));
  CHECK(F("geom:3/2:2/3").eval_exact(2) == mpq_class(3, 2));
  CHECK(F("table:1,3").eval(7) == ExpNum(3));
  CHECK_THROWS_AS(F("table:1,3").eval(P("2^(2^70)")), nullbound::Unsupported);
  CHECK_THROWS_AS(F("geom:3/2:1/1").eval(P("2^(2^70)")), nullbound::Unsupported);
  CHECK_THROWS_AS(F("pow2:1").eval(0), nullbound::PreconditionViolated);
}

TEST_CASE("inv_ceil") {
  CHECK(F("pow2:1").inv_ceil(8).value() == ExpNum(3));
  CHECK(F("pow2:2").inv_ceil(9).value() == ExpNum(3));
  CHECK(F("affine:2:0").inv_ceil(7).value() == ExpNum(4));
  CHECK(F("pow2:1").inv_ceil(P("2^(2^65536)-3")).value() == P("2^65536"));
  CHECK(F("pow2:3").inv_ceil(P("2^(2^65536)")).value() == P("2^65536-1"));
  CHECK(F("affine:1:4").inv_ceil(P("2^(2^70)")).value() == P("2^(2^70)-4"));
  CHECK_THROWS_AS(F("affine:3:0").inv_ceil(P("2^(2^70)")), nullbound::Unsupported);
  CHECK_THROWS_AS(F("table:1,3").inv_ceil(4), nullbound::Unsupported);
  CHECK(F("table:1,3").inv_ceil(0).value() == ExpNum(1));
  CHECK(F("geom:3/2:2/3").inv_ceil(P("2^4000")).value() > ExpNum(6000));
}

TEST_CASE("shift and scale") {
  CHECK(F("pow2:5").shift(0) == F("pow2:5"));
  CHECK(F("pow2:1").shift(3) == F("pow2:8"));
  CHECK(F("affine:1:2").shift(5) == F("affine:1:7"));
  CHECK(F("table:1,2,3").shift(2) == F("table:3"));
  CHECK(F("table:1,2,3").shift(9) == F("table:3"));
  CHECK(F("pow2:1").shift(P("2^(2^520)")).ell() == P("2^(2^(2^520))"));
  CHECK(F("geom:3/2:2/3").scale(2).eval_exact(1) == mpq_class(2));
  CHECK(F("affine:2:1").scale(3) == F("affine:6:3"));
}

TEST_CASE("parse and render") {
  for (const char* s : {"pow2:1", "pow2:2^(2^520)+7", "geom:3/2:2/3", "affine:2:5", "table:1,2,2,9"}) {
    CHECK(F(s).render() == s);
  }
  CHECK(F("geom:2:3").render() == "geom:2/1:3/1");
  CHECK_THROWS_AS(F("pow2"), nullbound::ParseError);
  CHECK_THROWS_AS(F("cubic:3"), nullbound::ParseError);
  CHECK_THROWS_AS(F("pow2:0"), nullbound::ParseError);
  CHECK_THROWS_AS(F("table:3,1"), nullbound::ParseError);
  CHECK_THROWS_AS(F("geom:1/2:1"), nullbound::ParseError);
  CHECK_THROWS_AS(F("affine:x:1"), nullbound::ParseError);
}

TEST_CASE("property: monotone, exact inverse, shift law") {
  for (const auto& f : sample_families()) {
    CAPTURE(f.render());
    const bool strict = f.family() != GrowthFunction::Family::table &&
                        f.family() != GrowthFunction::Family::geometric;
    for (std::uint64_t i = 1; i < 40; ++i) {
      const ExpNum a = f.eval(i);
      const ExpNum b = f.eval(i + 1);
      CHECK(a <= b);
      if (strict) {
        CHECK(a < b);
        CHECK(f.inv_ceil(a).value() == ExpNum(i));
        CHECK(f.inv_ceil(a + ExpNum(1)).value() == ExpNum(i + 1));
      }
      // Least-index characterization holds for every family.
      for (const ExpNum& x : {a, a + ExpNum(1), a - ExpNum(1)}) {
        if (f.family() == GrowthFunction::Family::table && x > f.values().back()) continue;
        const ExpNum k = f.inv_ceil(x).value();
        CHECK(f.eval(k) >= x);
        if (k > ExpNum(1)) CHECK(f.eval(k - ExpNum(1)) < x);
      }
      for (std::uint64_t s : {0u, 1u, 3u, 10u}) {
        CHECK(f.shift(s).eval(i) == f.eval(i + s));
      }
    }
  }
}
