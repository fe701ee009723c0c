#include <doctest.h>

#include "nullbound/ackermann.hpp"
#include "nullbound/dickson.hpp"

using namespace nullbound;

namespace {

GrowthFunction F(const char* s) { return GrowthFunction::parse(s); }

SequenceRecord record(unsigned m, std::vector<std::vector<std::uint64_t>> pts) {
  SequenceRecord s;
  s.m = m;
  for (const auto& p : pts) {
    Tuple t;
    for (auto x : p) t.coords.emplace_back(x);
    s.elements.push_back(std::move(t));
  }
  return s;
}

void check_padded(const SequenceRecord& in, const SequenceRecord& out, unsigned d) {
  REQUIRE(out.m == in.m + d);
  CHECK(verify(out).dicksonian);
  for (std::size_t j = 1; j < out.elements.size(); ++j) {
    CHECK(out.elements[j].degree() == out.elements[j - 1].degree() + ExpNum(1));
  }
  // The padded images appear in order.
  std::size_t pos = 0;
  for (const auto& t : in.elements) {
    while (pos < out.elements.size()) {
      const auto& c = out.elements[pos++].coords;
      if (std::equal(t.coords.begin(), t.coords.end(), c.begin())) break;
    }
  }
  CHECK(out.elements.size() >= in.elements.size());
}

}  // namespace

TEST_CASE("p1 bound") {
  CHECK(p1_bound(2, ExpNum(1)) == ExpNum(2));
  CHECK(p1_bound(1, ExpNum(1)) == ExpNum(1));
  CHECK(p1_bound(2, ExpNum(3)) == ExpNum(4));
  CHECK(p1_bound(3, ExpNum(2)) == ExpNum(11));
  CHECK(p1_bound(4, ExpNum(1)) == ExpNum(12));
  CHECK_THROWS_AS(p1_bound(2, ExpNum(0)), PreconditionViolated);
}

TEST_CASE("fixed degree search reaches the bound") {
  for (unsigned m = 1; m <= 2; ++m) {
    for (std::uint64_t h = 1; h <= 3; ++h) {
      CAPTURE(m);
      CAPTURE(h);
      const auto r = brute_dickson_max(std::nullopt, m, DicksonMode::fixed_degree(h));
      CHECK(ExpNum(r.length) == p1_bound(m, ExpNum(h)));
      CHECK(verify(r.witness).dicksonian);
      for (std::size_t i = 0; i < r.witness.elements.size(); ++i) {
        CHECK(r.witness.elements[i].degree() == ExpNum(h + i));
      }
    }
  }
  CHECK(brute_dickson_max(std::nullopt, 3, DicksonMode::fixed_degree(1)).length == 4);
  CHECK(brute_dickson_max(std::nullopt, 3, DicksonMode::fixed_degree(2)).length == 11);
}

TEST_CASE("growth-bounded searches") {
  const auto one = brute_dickson_max(F("affine:1:0"), 1, DicksonMode::degree_growth());
  CHECK(one.length == 2);
  CHECK(one.witness.elements[0].coords[0] == ExpNum(1));
  CHECK(brute_dickson_max(F("affine:1:1"), 1, DicksonMode::degree_growth()).length == 3);
  CHECK(brute_dickson_max(F("affine:1:0"), 2, DicksonMode::degree_growth()).length == 4);
  const auto box = brute_dickson_max(F("table:2,2,2"), 2, DicksonMode::max_growth());
  CHECK(box.length == 9);
  CHECK(verify(box.witness).dicksonian);
  CHECK(brute_dickson_max(F("table:1"), 3, DicksonMode::max_growth()).length == 8);
  // In one coordinate a Dicksonian sequence strictly decreases.
  CHECK(brute_dickson_max(F("table:5"), 1, DicksonMode::max_growth()).length == 6);
  CHECK_THROWS_AS(brute_dickson_max(std::nullopt, 2, DicksonMode::degree_growth()), PreconditionViolated);
  DicksonCaps tight;
  tight.length_cap = 5;
  CHECK_THROWS_AS(brute_dickson_max(F("table:2,2,2"), 2, DicksonMode::max_growth(), tight), BudgetExceeded);
}

TEST_CASE("padding examples") {
  const auto one = pad_construction(record(2, {{1, 0}}), F("affine:2:0"), Lemma::lexbound(2));
  REQUIRE(one.elements.size() == 1);
  CHECK(one.elements[0].coords == std::vector<ExpNum>{ExpNum(1), ExpNum(0), ExpNum(2), ExpNum(2)});
  CHECK(one.elements[0].degree() == ExpNum(5));

  CHECK(pad_construction(record(2, {}), F("affine:2:0"), Lemma::lexbound(2)).elements.empty());

  const auto two = record(2, {{2, 0}, {1, 1}});
  const auto padded = pad_construction(two, F("table:2,3"), Lemma::lexbound3(2, 3));
  check_padded(two, padded, 2);
  CHECK(padded.elements.front().coords[2] == ExpNum(6));
  CHECK(padded.elements.back().coords[2] == ExpNum(9));

  const auto three = record(2, {{2, 1}, {1, 2}});
  const auto wide = pad_construction(three, F("pow2:1"), Lemma::lexbound(3));
  check_padded(three, wide, 3);
  CHECK(wide.elements.size() == 7);
}

TEST_CASE("padding rejects bad input") {
  CHECK_THROWS_AS(pad_construction(record(2, {{1, 0}, {1, 1}}), F("pow2:1"), Lemma::lexbound(3)),
                  PreconditionViolated);
  CHECK_THROWS_AS(pad_construction(record(2, {{2, 1}, {1, 2}}), F("pow2:1"), Lemma::lexbound(2)),
                  HypothesisViolated);
  CHECK_THROWS_AS(pad_construction(record(2, {{3, 0}}), F("affine:2:0"), Lemma::lexbound(2)), PreconditionViolated);
  CHECK_THROWS_AS(pad_construction(record(2, {{1, 0}}), F("geom:3/2:2/3"), Lemma::lexbound3(2, 3)), Unsupported);
}

TEST_CASE("property: padded sequences are Dicksonian unit-step chains") {
  // Every Dicksonian witness the search finds, padded with each variant whose hypothesis holds.
  for (const char* s : {"table:1,2", "table:2,2,2"}) {
    const auto base = brute_dickson_max(F(s), 2, DicksonMode::max_growth()).witness;
    for (std::size_t len = 1; len <= std::min<std::size_t>(base.elements.size(), 4); ++len) {
      SequenceRecord prefix = base;
      prefix.elements.resize(len);
      for (const GrowthFunction& g : {F("pow2:2"), F("pow2:3")}) {
        for (unsigned d = 3; d <= 4; ++d) {
          CAPTURE(s);
          CAPTURE(len);
          CAPTURE(d);
          const Lemma lem = Lemma::lexbound(d);
          bool ok = true;
          for (std::size_t i = 0; i < len; ++i) {
            for (const auto& c : prefix.elements[i].coords) ok = ok && c <= g.eval(ExpNum(i + 1));
          }
          if (!ok || (len >= 2 && !check_hypothesis(lem, g, 2, 1, len - 1).holds)) continue;
          const auto out = pad_construction(prefix, g, lem);
          check_padded(prefix, out, d);
          // The chain starts at degree h and cannot outlast A(m+d, h-1) - h.
          const ExpNum h = out.elements.front().degree();
          std::optional<ExpNum> cap;
          try {
            cap = p1_bound(2 + d, h);
          } catch (const BudgetExceeded&) {
          }
          if (cap) CHECK(ExpNum(static_cast<std::uint64_t>(out.elements.size())) <= *cap);
        }
      }
    }
  }
}
