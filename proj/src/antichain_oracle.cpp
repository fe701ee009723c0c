// Exhaustive maximal-length search for antichain sequences with degree growth bounded by f.
//
// Any antichain can be listed in degree order, and then the j-th element only needs
// degree <= f(j). So the search walks degrees d = 0, 1, 2, ... and decides which points of
// degree d to take. The state is (d, count so far, degree-d part of the up-set of everything
// taken), memoized. Branches are cut with a cover of Z^m by lines parallel to the last axis:
// an antichain meets each line at most once.

#include <algorithm>
#include <unordered_map>

#include "nullbound/antichain.hpp"

namespace nullbound {

namespace {

using Packed = std::uint64_t;
constexpr unsigned kBits = 8;
constexpr Packed kMask = 0xff;
constexpr unsigned kMaxM = 7;
constexpr unsigned kMaxN = 255;

struct VecHash {
  std::size_t operator()(const std::vector<Packed>& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (Packed x : v) h ^= std::hash<Packed>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

class Search {
 public:
  Search(const GrowthFunction& f, unsigned m, unsigned n, std::uint64_t cap, std::uint64_t dmax)
      : m_(m), n_(n), cap_(cap), dmax_(dmax) {
    fv_.resize(cap + 2);
    for (std::uint64_t k = 1; k <= cap + 1; ++k) {
      fv_[k] = *f.eval(ExpNum(k)).to_uint64();
    }
    // Dense prefix index: base dmax+1 over the first m-1 coordinates.
    prefix_count_ = 1;
    for (unsigned k = 0; k + 1 < m_; ++k) prefix_count_ *= dmax_ + 1;
    prefix_deg_.resize(prefix_count_);
    for (std::size_t idx = 0; idx < prefix_count_; ++idx) {
      std::size_t rest = idx;
      std::uint64_t s = 0;
      for (unsigned k = 0; k + 1 < m_; ++k) {
        s += rest % (dmax_ + 1);
        rest /= dmax_ + 1;
      }
      prefix_deg_[idx] = s;
    }
  }

  std::uint64_t value(std::uint64_t d, std::uint64_t c, const std::vector<Packed>& frontier) {
    if (c > cap_) return cap_ + 1;
    if (d > fv_[c + 1] || d > dmax_) return c;
    std::vector<Packed> key;
    key.reserve(frontier.size() + 1);
    key.push_back(d << 32 | c);
    key.insert(key.end(), frontier.begin(), frontier.end());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.value;

    Layer layer{d, c, frontier, {}, {}, {}, c, std::nullopt};
    for (Packed x : points_of_degree(d)) {
      if (!std::binary_search(frontier.begin(), frontier.end(), x)) layer.avail.push_back(x);
    }
    layer.picked.assign(layer.avail.size(), 0);
    explore(layer, 0);
    memo_.emplace(std::move(key), Entry{layer.best, layer.best_picks});
    return layer.best;
  }

  // Replays the memoized choices from the root.
  std::vector<Packed> witness() {
    std::vector<Packed> out;
    std::vector<Packed> frontier;
    std::uint64_t d = 0;
    std::uint64_t c = 0;
    for (;;) {
      if (c > cap_ || d > dmax_ || d > fv_[c + 1]) break;
      std::vector<Packed> key{d << 32 | c};
      key.insert(key.end(), frontier.begin(), frontier.end());
      const auto it = memo_.find(key);
      if (it == memo_.end() || !it->second.picks) break;
      const auto& picks = *it->second.picks;
      out.insert(out.end(), picks.begin(), picks.end());
      c += picks.size();
      frontier = grow(frontier, picks);
      ++d;
    }
    return out;
  }

  unsigned m() const { return m_; }

 private:
  struct Entry {
    std::uint64_t value;
    std::optional<std::vector<Packed>> picks;  // nullopt: stop here
  };

  struct Layer {
    std::uint64_t d;
    std::uint64_t c;
    const std::vector<Packed>& frontier;
    std::vector<Packed> avail;
    std::vector<char> picked;
    std::vector<Packed> chosen;
    std::uint64_t best;
    std::optional<std::vector<Packed>> best_picks;
  };

  static unsigned coord(Packed x, unsigned k) { return static_cast<unsigned>((x >> (kBits * k)) & kMask); }
  static unsigned component(Packed x) { return static_cast<unsigned>(x >> 56); }

  const std::vector<Packed>& points_of_degree(std::uint64_t d) {
    if (auto it = layers_.find(d); it != layers_.end()) return it->second;
    std::vector<Packed> pts;
    std::vector<unsigned> xi(m_, 0);
    auto rec = [&](auto&& self, unsigned pos, std::uint64_t left) -> void {
      if (pos + 1 == m_) {
        xi[pos] = static_cast<unsigned>(left);
        Packed p = 0;
        for (unsigned k = 0; k < m_; ++k) p |= Packed{xi[k]} << (kBits * k);
        for (unsigned comp = 0; comp < n_; ++comp) pts.push_back(p | Packed{comp} << 56);
        return;
      }
      for (std::uint64_t x = left + 1; x-- > 0;) {
        xi[pos] = static_cast<unsigned>(x);
        self(self, pos + 1, left - x);
      }
    };
    rec(rec, 0, d);
    return layers_.emplace(d, std::move(pts)).first->second;
  }

  std::vector<Packed> grow(const std::vector<Packed>& frontier, const std::vector<Packed>& picks) const {
    std::vector<Packed> out;
    out.reserve((frontier.size() + picks.size()) * m_);
    auto push_up = [&](Packed x) {
      for (unsigned k = 0; k < m_; ++k) {
        if (coord(x, k) < kMask) out.push_back(x + (Packed{1} << (kBits * k)));
      }
    };
    for (Packed x : frontier) push_up(x);
    for (Packed x : picks) push_up(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::size_t prefix_index(Packed x) const {
    std::size_t idx = 0;
    std::size_t mul = 1;
    for (unsigned k = 0; k + 1 < m_; ++k) {
      idx += coord(x, k) * mul;
      mul *= dmax_ + 1;
    }
    return idx;
  }

  // c + |picks| + the most further elements the free lines could still supply.
  std::uint64_t upper_bound(const Layer& L, std::size_t next) {
    const std::uint64_t c0 = L.c + L.chosen.size();
    if (c0 > cap_) return cap_ + 1;
    const std::uint64_t inf = ~std::uint64_t{0};
    const std::size_t lines = prefix_count_ * n_;
    // thr[line]: least degree from which the line is inside the up-set.
    thr_.assign(lines, inf);
    auto note = [&](Packed y) {
      const std::size_t li = component(y) * prefix_count_ + prefix_index(y);
      const std::uint64_t t = prefix_deg_[prefix_index(y)] + coord(y, m_ - 1);
      thr_[li] = std::min(thr_[li], t);
    };
    for (Packed y : L.frontier) note(y);
    for (Packed y : L.chosen) note(y);
    // Propagate along the prefix order: a line inherits blocking from lines below it.
    const std::uint64_t base = dmax_ + 1;
    for (unsigned comp = 0; comp < n_; ++comp) {
      std::uint64_t* t = thr_.data() + comp * prefix_count_;
      for (std::size_t idx = 0; idx < prefix_count_; ++idx) {
        std::size_t rest = idx;
        std::size_t mul = 1;
        for (unsigned k = 0; k + 1 < m_; ++k) {
          if (rest % base > 0 && t[idx - mul] != inf) {
            // Same last coordinate, one more unit in the prefix: one degree higher.
            t[idx] = std::min(t[idx], t[idx - mul] + 1);
          }
          rest /= base;
          mul *= base;
        }
      }
    }
    // Lines whose degree-d point is still undecided or already taken.
    mark_.assign(lines, 0);
    for (std::size_t i = 0; i < L.avail.size(); ++i) {
      const std::size_t li = component(L.avail[i]) * prefix_count_ + prefix_index(L.avail[i]);
      if (i < next) {
        mark_[li] = L.picked[i] ? 2 : 0;
      } else {
        mark_[li] = 1;
      }
    }
    counts_.assign(dmax_ + 2, 0);
    for (std::size_t li = 0; li < lines; ++li) {
      if (mark_[li] == 2) continue;
      const std::uint64_t pd = prefix_deg_[li % prefix_count_];
      std::uint64_t e;
      if (mark_[li] == 1) {
        e = L.d;
      } else {
        e = std::max(L.d + 1, pd);
        if (e >= thr_[li] || e > dmax_) continue;
      }
      ++counts_[e];
    }
    std::uint64_t q = 0;
    for (std::uint64_t e = L.d; e <= dmax_; ++e) {
      for (std::uint64_t k = 0; k < counts_[e]; ++k) {
        if (c0 + q + 1 > cap_ + 1) return cap_ + 1;
        if (e > fv_[c0 + q + 1]) return c0 + q;
        ++q;
      }
    }
    return c0 + q;
  }

  void explore(Layer& L, std::size_t next) {
    if (L.best > cap_) return;
    if (upper_bound(L, next) <= L.best) return;
    if (next == L.avail.size()) {
      if (L.chosen.empty() && L.d + 1 > fv_[L.c + 1]) return;
      const auto child = grow(L.frontier, L.chosen);
      const std::uint64_t v = value(L.d + 1, L.c + L.chosen.size(), child);
      if (v > L.best) {
        L.best = v;
        L.best_picks = L.chosen;
      }
      return;
    }
    L.picked[next] = 1;
    L.chosen.push_back(L.avail[next]);
    explore(L, next + 1);
    L.chosen.pop_back();
    L.picked[next] = 0;
    explore(L, next + 1);
  }

  unsigned m_;
  unsigned n_;
  std::uint64_t cap_;
  std::uint64_t dmax_;
  std::vector<std::uint64_t> fv_;
  std::size_t prefix_count_ = 1;
  std::vector<std::uint64_t> prefix_deg_;
  std::unordered_map<std::uint64_t, std::vector<Packed>> layers_;
  std::unordered_map<std::vector<Packed>, Entry, VecHash> memo_;
  std::vector<std::uint64_t> thr_;
  std::vector<char> mark_;
  std::vector<std::uint64_t> counts_;
};

}  // namespace

BruteResult brute_max_length(const GrowthFunction& f, unsigned m, unsigned n,
                             std::uint64_t length_cap, std::uint64_t degree_cap) {
  if (m < 1 || m > kMaxM) throw PreconditionViolated("exhaustive search supports 1 <= m <= 7");
  if (n < 1 || n > kMaxN) throw PreconditionViolated("exhaustive search supports 1 <= n <= 255");
  degree_cap = std::min<std::uint64_t>(degree_cap, kMask);
  const auto top = f.eval(ExpNum(length_cap + 1)).to_uint64();
  if (!top || *top > degree_cap) {
    throw BudgetExceeded("f(" + std::to_string(length_cap + 1) + ") exceeds the degree cap " +
                         std::to_string(degree_cap));
  }
  // A checked antichain longer than the cap settles the question without searching.
  SequenceRecord probe;
  probe.m = m;
  probe.n = n;
  probe.growth = f;
  try {
    probe.elements = extremal_sequence(f, m, n, length_cap + 1);
  } catch (const Error&) {
    probe.elements.clear();
  }
  if (probe.elements.size() > length_cap && verify(probe).antichain) {
    validate(probe);
    throw BudgetExceeded("antichain length exceeds the cap " + std::to_string(length_cap));
  }

  Search search(f, m, n, length_cap, *top);
  const std::uint64_t best = search.value(0, 0, {});
  if (best > length_cap) {
    throw BudgetExceeded("antichain length exceeds the cap " + std::to_string(length_cap));
  }
  BruteResult out;
  out.length = best;
  out.witness.m = m;
  out.witness.n = n;
  out.witness.growth = f;
  for (Packed x : search.witness()) {
    Tuple t;
    t.component = static_cast<unsigned>(x >> 56);
    for (unsigned k = 0; k < m; ++k) t.coords.emplace_back(static_cast<std::uint64_t>((x >> (kBits * k)) & kMask));
    out.witness.elements.push_back(std::move(t));
  }
  out.witness = reorder(out.witness);
  if (out.witness.elements.size() != best) throw Error("oracle witness does not match its length");
  return out;
}

}  // namespace nullbound
