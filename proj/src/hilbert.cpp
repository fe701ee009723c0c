#include "nullbound/hilbert.hpp"

#include <algorithm>
#include <map>

namespace nullbound {

namespace {

constexpr std::uint64_t kEnumerationBudget = 200'000;
constexpr std::size_t kInclusionExclusionCap = 24;

using Point = std::vector<std::uint64_t>;

mpz_class binom(std::uint64_t n, std::uint64_t k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Points of degree d in Z^m that are >= a point of degree s.
mpz_class cone_count(std::uint64_t d, std::uint64_t s, unsigned m) {
  if (d < s) return 0;
  return binom(d - s + m - 1, m - 1);
}

std::uint64_t sum(const Point& p) {
  std::uint64_t s = 0;
  for (auto x : p) s += x;
  return s;
}

template <class Visit>
void for_each_composition(std::uint64_t d, unsigned m, Visit&& visit) {
  Point p(m, 0);
  auto rec = [&](auto&& self, unsigned pos, std::uint64_t left) -> void {
    if (pos + 1 == m) {
      p[pos] = left;
      visit(p);
      return;
    }
    for (std::uint64_t x = 0; x <= left; ++x) {
      p[pos] = x;
      self(self, pos + 1, left - x);
    }
  };
  rec(rec, 0, d);
}

std::vector<std::vector<Point>> prefix_by_component(const SequenceRecord& seq, std::size_t i) {
  if (i > seq.elements.size()) throw PreconditionViolated("prefix longer than the sequence");
  std::vector<std::vector<Point>> out(seq.n);
  for (std::size_t j = 0; j < i; ++j) {
    const Tuple& t = seq.elements[j];
    out.at(t.component).push_back(small_coords(t));
  }
  return out;
}

mpz_class hs_enumerate(const std::vector<std::vector<Point>>& parts, std::uint64_t d, unsigned m) {
  mpz_class total = 0;
  for (const auto& gens : parts) {
    std::uint64_t count = 0;
    for_each_composition(d, m, [&](const Point& xi) {
      const bool covered = std::any_of(gens.begin(), gens.end(), [&](const Point& g) {
        for (unsigned k = 0; k < m; ++k) {
          if (g[k] > xi[k]) return false;
        }
        return true;
      });
      if (!covered) ++count;
    });
    total += static_cast<unsigned long>(count);
  }
  return total;
}

mpz_class hs_inclusion_exclusion(const std::vector<std::vector<Point>>& parts, std::uint64_t d,
                                 unsigned m) {
  mpz_class total = 0;
  for (const auto& gens : parts) {
    if (gens.size() > kInclusionExclusionCap) {
      throw BudgetExceeded("inclusion-exclusion over too many generators");
    }
    // Signed multiplicity of each join of a nonempty subset, merged as we go.
    std::map<Point, long> joins;
    for (const auto& g : gens) {
      std::map<Point, long> next = joins;
      for (const auto& [j, c] : joins) {
        Point k(m);
        for (unsigned x = 0; x < m; ++x) k[x] = std::max(j[x], g[x]);
        next[k] -= c;
      }
      next[g] += 1;
      std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
      joins = std::move(next);
    }
    mpz_class covered = 0;
    for (const auto& [j, c] : joins) covered += cone_count(d, sum(j), m) * c;
    total += cone_count(d, 0, m) - covered;
  }
  return total;
}

}  // namespace

ExpNum Tuple::degree() const {
  ExpNum s;
  for (const auto& c : coords) s += c;
  return s;
}

std::string Tuple::render() const {
  std::string out = "(";
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (k > 0) out += ',';
    out += coords[k].render();
  }
  out += ')';
  if (component != 0) out += "#" + std::to_string(component);
  return out;
}

bool leq(const Tuple& a, const Tuple& b) {
  if (a.component != b.component || a.coords.size() != b.coords.size()) return false;
  for (std::size_t k = 0; k < a.coords.size(); ++k) {
    if (a.coords[k] > b.coords[k]) return false;
  }
  return true;
}

std::strong_ordering deglex_compare(const Tuple& a, const Tuple& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t k = 0; k < std::min(a.coords.size(), b.coords.size()); ++k) {
    if (auto c = a.coords[k] <=> b.coords[k]; c != 0) return c;
  }
  return a.coords.size() <=> b.coords.size();
}

void validate(const SequenceRecord& seq) {
  if (seq.m < 1 || seq.n < 1) throw PreconditionViolated("m and n must be positive");
  for (std::size_t i = 0; i < seq.elements.size(); ++i) {
    const Tuple& t = seq.elements[i];
    if (t.coords.size() != seq.m) {
      throw PreconditionViolated("element " + std::to_string(i) + " does not have m coordinates");
    }
    if (t.component >= seq.n) {
      throw PreconditionViolated("element " + std::to_string(i) + " has component out of range");
    }
    for (const auto& c : t.coords) {
      if (c.sign() < 0) throw PreconditionViolated("coordinates must be nonnegative");
    }
    if (seq.growth && t.degree() > seq.growth->eval(ExpNum(static_cast<std::uint64_t>(i + 1)))) {
      throw PreconditionViolated("element " + std::to_string(i) + " exceeds the growth certificate");
    }
  }
}

std::vector<std::uint64_t> small_coords(const Tuple& t) {
  std::vector<std::uint64_t> out;
  out.reserve(t.coords.size());
  for (const auto& c : t.coords) {
    const auto v = c.to_uint64();
    if (!v || *v > (std::uint64_t{1} << 40)) {
      throw BudgetExceeded("coordinate " + c.render() + " is outside the enumeration range");
    }
    out.push_back(*v);
  }
  return out;
}

mpz_class hs(const SequenceRecord& seq, std::size_t i, std::uint64_t d, HsMethod method) {
  const auto parts = prefix_by_component(seq, i);
  if (method == HsMethod::automatic) {
    const mpz_class points = cone_count(d, 0, seq.m);
    method = points <= kEnumerationBudget ? HsMethod::enumerate : HsMethod::inclusion_exclusion;
  }
  if (method == HsMethod::enumerate) {
    if (cone_count(d, 0, seq.m) > kEnumerationBudget) {
      throw BudgetExceeded("degree too large for direct enumeration");
    }
    return hs_enumerate(parts, d, seq.m);
  }
  return hs_inclusion_exclusion(parts, d, seq.m);
}

std::optional<std::vector<std::uint64_t>> lex_predecessor(std::vector<std::uint64_t> xi) {
  const std::size_t m = xi.size();
  if (m < 2) return std::nullopt;
  std::size_t r = m - 1;
  for (std::size_t k = m - 1; k-- > 0;) {
    if (xi[k] > 0) {
      r = k;
      break;
    }
  }
  if (r == m - 1) return std::nullopt;
  // Move one unit from r into r+1 and push the whole tail there.
  std::uint64_t tail = 1;
  for (std::size_t k = r + 1; k < m; ++k) {
    tail += xi[k];
    xi[k] = 0;
  }
  xi[r] -= 1;
  xi[r + 1] = tail;
  return xi;
}

bool is_compressed(const SequenceRecord& seq, std::size_t i) {
  const auto parts = prefix_by_component(seq, i);
  for (const auto& gens : parts) {
    std::uint64_t top = 0;
    for (const auto& g : gens) top = std::max(top, sum(g));
    // Past the top generator degree the up-set grows by multiplication only, which keeps
    // lex segments lex segments.
    for (std::uint64_t d = 0; d <= top && !gens.empty(); ++d) {
      if (cone_count(d, 0, seq.m) > kEnumerationBudget) {
        throw BudgetExceeded("degree too large for the compression check");
      }
      // Walk degree d in descending lex order: members of the up-set must come first.
      std::optional<Point> cur = Point(seq.m, 0);
      (*cur)[0] = d;
      bool outside = false;
      for (; cur; cur = lex_predecessor(*cur)) {
        const bool covered = std::any_of(gens.begin(), gens.end(), [&](const Point& g) {
          for (unsigned k = 0; k < seq.m; ++k) {
            if (g[k] > (*cur)[k]) return false;
          }
          return true;
        });
        if (covered && outside) return false;
        outside = outside || !covered;
      }
    }
  }
  return true;
}

}  // namespace nullbound
