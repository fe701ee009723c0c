#include "nullbound/dickson.hpp"

#include <algorithm>
#include <map>

#include "nullbound/ackermann.hpp"

namespace nullbound {

namespace {

using Point = std::vector<std::uint64_t>;

bool dominates(const Point& a, const Point& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < b[k]) return false;
  }
  return true;
}

std::uint64_t degree_of(const Point& p) {
  std::uint64_t s = 0;
  for (auto x : p) s += x;
  return s;
}

std::uint64_t small_value(const GrowthFunction& f, std::uint64_t i) {
  const auto v = f.eval(ExpNum(i)).to_uint64();
  if (!v) throw BudgetExceeded("f(" + std::to_string(i) + ") is too large for this search");
  return *v;
}

class DicksonSearch {
 public:
  DicksonSearch(std::optional<GrowthFunction> f, unsigned m, DicksonMode mode, const DicksonCaps& caps)
      : f_(std::move(f)), m_(m), mode_(mode), caps_(caps) {}

  std::uint64_t value(std::uint64_t i, const std::vector<Point>& gens) {
    if (i > caps_.length_cap) return caps_.length_cap + 1;
    std::vector<std::uint64_t> key{i};
    for (const auto& g : gens) key.insert(key.end(), g.begin(), g.end());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.value;
    if (memo_.size() >= caps_.state_budget) throw BudgetExceeded("search state budget exhausted");

    Entry best{0, std::nullopt};
    for (const Point& p : candidates(i)) {
      if (std::any_of(gens.begin(), gens.end(), [&](const Point& g) { return dominates(p, g); })) continue;
      std::vector<Point> next;
      for (const auto& g : gens) {
        if (!dominates(g, p)) next.push_back(g);
      }
      next.push_back(p);
      std::sort(next.begin(), next.end());
      const std::uint64_t v = 1 + value(i + 1, next);
      if (v > best.value) {
        best = {v, p};
        if (v > caps_.length_cap) break;
      }
    }
    memo_.emplace(std::move(key), best);
    return best.value;
  }

  std::vector<Point> witness() {
    std::vector<Point> out;
    std::vector<Point> gens;
    for (std::uint64_t i = 1;; ++i) {
      std::vector<std::uint64_t> key{i};
      for (const auto& g : gens) key.insert(key.end(), g.begin(), g.end());
      const auto it = memo_.find(key);
      if (it == memo_.end() || !it->second.choice) break;
      const Point p = *it->second.choice;
      out.push_back(p);
      std::vector<Point> next;
      for (const auto& g : gens) {
        if (!dominates(g, p)) next.push_back(g);
      }
      next.push_back(p);
      std::sort(next.begin(), next.end());
      gens = std::move(next);
    }
    return out;
  }

 private:
  struct Entry {
    std::uint64_t value;
    std::optional<Point> choice;
  };

  const std::vector<Point>& candidates(std::uint64_t i) {
    std::uint64_t bound;
    if (mode_.kind == DicksonMode::Kind::fixed_degree) {
      bound = mode_.h + i - 1;
    } else {
      bound = small_value(*f_, i);
    }
    if (auto it = cache_.find(bound); it != cache_.end()) return it->second;
    if (bound > caps_.degree_cap) throw BudgetExceeded("the search needs values above the degree cap");
    std::vector<Point> pts;
    Point p(m_, 0);
    const bool box = mode_.kind == DicksonMode::Kind::max_growth;
    const bool exact = mode_.kind == DicksonMode::Kind::fixed_degree;
    auto rec = [&](auto&& self, unsigned pos, std::uint64_t used) -> void {
      if (pos == m_) {
        if (!exact || used == bound) pts.push_back(p);
        return;
      }
      const std::uint64_t top = box ? bound : bound - used;
      for (std::uint64_t x = 0; x <= top; ++x) {
        p[pos] = x;
        self(self, pos + 1, used + x);
      }
      p[pos] = 0;
    };
    rec(rec, 0, 0);
    // Larger points first so good sequences are found early.
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
      const auto da = degree_of(a), db = degree_of(b);
      return da != db ? da > db : a > b;
    });
    return cache_.emplace(bound, std::move(pts)).first->second;
  }

  std::optional<GrowthFunction> f_;
  unsigned m_;
  DicksonMode mode_;
  DicksonCaps caps_;
  std::map<std::vector<std::uint64_t>, Entry> memo_;
  std::map<std::uint64_t, std::vector<Point>> cache_;
};

// A Dicksonian run start, s_1, ..., s_count in Z^d with deg s_j = deg start + j. Depth-first,
// trying candidates in descending lex order; subtrees whose prefix already forces domination
// by an earlier point are skipped.
class Filler {
 public:
  explicit Filler(std::uint64_t budget) : budget_(budget) {}

  std::vector<Point> run(const Point& start, std::uint64_t count) {
    if (count == 0) return {};
    if (start.size() < 2) throw InterpolationFailed("no unit-step filler exists in fewer than two coordinates");
    seq_ = {start};
    if (!extend(count)) throw InterpolationFailed("no unit-step filler from this tuple");
    return {seq_.begin() + 1, seq_.end()};
  }

 private:
  bool extend(std::uint64_t left) {
    if (left == 0) return true;
    const std::size_t d = seq_.back().size();
    Point cur(d, 0);
    std::vector<const Point*> active;
    for (const auto& g : seq_) active.push_back(&g);
    return place(cur, 0, degree_of(seq_.back()) + 1, active, left);
  }

  // Chooses cur[j..] with the given remaining sum; `active` holds the points not yet escaped.
  bool place(Point& cur, std::size_t j, std::uint64_t rest, const std::vector<const Point*>& active,
             std::uint64_t left) {
    if (++nodes_ > budget_) throw InterpolationFailed("filler search budget exhausted");
    const std::size_t d = cur.size();
    for (const Point* g : active) {
      bool open = false;
      for (std::size_t k = j; k < d; ++k) open = open || (*g)[k] > 0;
      if (!open) return false;
    }
    if (j + 1 == d) {
      cur[j] = rest;
      for (const Point* g : active) {
        if ((*g)[j] <= rest) return false;
      }
      seq_.push_back(cur);
      if (extend(left - 1)) return true;
      seq_.pop_back();
      return false;
    }
    for (std::uint64_t x = rest + 1; x-- > 0;) {
      cur[j] = x;
      std::vector<const Point*> still;
      for (const Point* g : active) {
        if ((*g)[j] <= x) still.push_back(g);
      }
      if (place(cur, j + 1, rest - x, still, left)) return true;
    }
    cur[j] = 0;
    return false;
  }

  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<Point> seq_;
};

constexpr std::uint64_t kMaxFillerRun = 5'000;

}  // namespace

ExpNum p1_bound(unsigned m, const ExpNum& h) {
  if (m < 1 || h < ExpNum(1)) throw PreconditionViolated("p1_bound needs m, h >= 1");
  return ack(m, h - ExpNum(1)) - h;
}

BruteResult brute_dickson_max(const std::optional<GrowthFunction>& f, unsigned m, DicksonMode mode,
                              const DicksonCaps& caps) {
  if (m < 1 || m > 7) throw PreconditionViolated("exhaustive search supports 1 <= m <= 7");
  if (mode.kind == DicksonMode::Kind::fixed_degree && mode.h < 1) throw PreconditionViolated("h must be positive");
  if (mode.kind != DicksonMode::Kind::fixed_degree && !f) throw PreconditionViolated("growth function required");
  DicksonCaps c = caps;
  c.degree_cap = std::min<std::uint64_t>(c.degree_cap, 255);
  DicksonSearch search(f, m, mode, c);
  const std::uint64_t best = search.value(1, {});
  if (best > c.length_cap) throw BudgetExceeded("Dicksonian length exceeds the cap " + std::to_string(c.length_cap));

  BruteResult out;
  out.length = best;
  out.witness.m = m;
  out.witness.n = 1;
  if (mode.kind == DicksonMode::Kind::degree_growth) out.witness.growth = f;
  if (mode.kind == DicksonMode::Kind::fixed_degree) {
    out.witness.growth = GrowthFunction::affine(1, ExpNum(mode.h - 1));
  }
  for (const Point& p : search.witness()) {
    Tuple t;
    for (auto x : p) t.coords.emplace_back(x);
    out.witness.elements.push_back(std::move(t));
  }
  validate(out.witness);
  const VerifyResult v = verify(out.witness);
  if (!v.dicksonian || out.witness.elements.size() != best) throw Error("search witness is inconsistent");
  out.witness.dicksonian = true;
  out.witness.antichain = v.antichain;
  return out;
}

SequenceRecord pad_construction(const SequenceRecord& seq, const GrowthFunction& f, const Lemma& variant,
                                std::uint64_t node_budget) {
  if (seq.n != 1) throw PreconditionViolated("padding works in a single component");
  if (f.family() == GrowthFunction::Family::geometric) {
    throw Unsupported("padding needs an integer-valued growth function");
  }
  if (variant.kind == LemmaKind::antiprop) throw PreconditionViolated("antiprop is not a padding variant");
  if (variant.kind == LemmaKind::lexbound3 && variant.a < 1) throw PreconditionViolated("lexbound3 needs a >= 1");
  SequenceRecord plain = seq;
  plain.growth.reset();
  validate(plain);
  if (!verify(plain).dicksonian) throw PreconditionViolated("the input is not Dicksonian");

  const unsigned m = seq.m;
  const unsigned d = variant.d;
  const std::size_t k = seq.elements.size();
  SequenceRecord out;
  out.m = m + d;
  out.n = 1;
  if (k == 0) return out;

  std::vector<Point> taus;
  std::vector<std::uint64_t> fv(k + 1);
  for (std::size_t i = 1; i <= k; ++i) {
    taus.push_back(small_coords(seq.elements[i - 1]));
    fv[i] = small_value(f, i);
    const Point& t = taus.back();
    const bool ok = variant.kind == LemmaKind::lexbound3
                        ? degree_of(t) <= fv[i]
                        : std::all_of(t.begin(), t.end(), [&](std::uint64_t x) { return x <= fv[i]; });
    if (!ok) throw PreconditionViolated("element " + std::to_string(i - 1) + " exceeds the growth bound");
  }
  if (k >= 2) {
    const Verdict v = check_hypothesis(variant, f, m, 1, k - 1);
    if (!v.holds) {
      throw HypothesisViolated(std::string(to_string(variant.kind)) + " hypothesis fails at i = " +
                               std::to_string(v.failures.front().i));
    }
  }

  auto tail = [&](std::size_t i) {
    Point t(d, 0);
    if (d == 0) return t;
    switch (variant.kind) {
      case LemmaKind::lexbound: std::fill(t.begin(), t.end(), fv[i]); break;
      case LemmaKind::lexbound2: t[0] = fv[i]; break;
      default: {
        const auto v = mpz_class(variant.a * fv[i]);
        if (!v.fits_ulong_p()) throw BudgetExceeded("padded coordinate too large");
        t[0] = v.get_ui();
      }
    }
    return t;
  };
  auto padded = [&](std::size_t i) {
    Point p = taus[i - 1];
    const Point t = tail(i);
    p.insert(p.end(), t.begin(), t.end());
    return p;
  };
  auto push = [&](const Point& p) {
    Tuple t;
    for (auto x : p) t.coords.emplace_back(x);
    out.elements.push_back(std::move(t));
  };

  Filler filler(node_budget);
  for (std::size_t i = 1; i <= k; ++i) {
    const Point here = padded(i);
    push(here);
    if (i == k) break;
    const Point next = padded(i + 1);
    const std::uint64_t dh = degree_of(here);
    const std::uint64_t dn = degree_of(next);
    if (dn == dh && i + 1 == k) break;  // the last tuple would repeat the degree: stop here
    if (dn <= dh) throw HypothesisViolated("padded degrees do not increase at i = " + std::to_string(i));
    const std::uint64_t count = dn - dh - 1;
    if (count > kMaxFillerRun) throw BudgetExceeded("filler run too long");
    for (const Point& s : filler.run(tail(i), count)) {
      Point p = taus[i - 1];
      p.insert(p.end(), s.begin(), s.end());
      push(p);
    }
  }

  const VerifyResult v = verify(out);
  for (std::size_t j = 1; j < out.elements.size(); ++j) {
    if (out.elements[j].degree() != out.elements[j - 1].degree() + ExpNum(1)) {
      throw Error("padded sequence does not rise by one at step " + std::to_string(j));
    }
  }
  if (!v.dicksonian) throw Error("padded sequence is not Dicksonian");
  out.dicksonian = true;
  out.antichain = v.antichain;
  return out;
}

}  // namespace nullbound
