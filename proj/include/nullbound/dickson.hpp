#pragma once

#include <cstdint>
#include <optional>

#include "nullbound/antichain.hpp"
#include "nullbound/bounds.hpp"
#include "nullbound/growth.hpp"
#include "nullbound/hilbert.hpp"

namespace nullbound {

/// A(m, h-1) - h: the longest Dicksonian sequence with deg tau_i = h + i - 1.
ExpNum p1_bound(unsigned m, const ExpNum& h);

struct DicksonMode {
  enum class Kind { max_growth, degree_growth, fixed_degree };
  Kind kind = Kind::degree_growth;
  std::uint64_t h = 1;

  static DicksonMode max_growth() { return {Kind::max_growth, 1}; }
  static DicksonMode degree_growth() { return {Kind::degree_growth, 1}; }
  static DicksonMode fixed_degree(std::uint64_t h) { return {Kind::fixed_degree, h}; }
};

struct DicksonCaps {
  std::uint64_t length_cap = 64;
  /// Largest coordinate bound or degree the search may need (at most 255).
  std::uint64_t degree_cap = 64;
  std::uint64_t state_budget = 2'000'000;
};

/// Exact maximal Dicksonian length by exhaustive search. f is ignored in fixed_degree mode and
/// required otherwise. Throws BudgetExceeded when a cap is hit.
BruteResult brute_dickson_max(const std::optional<GrowthFunction>& f, unsigned m, DicksonMode mode,
                              const DicksonCaps& caps = {});

/// Pads a Dicksonian sequence into one with d more coordinates whose degree rises by exactly one
/// per step. lexbound and lexbound2 expect max growth bounded by f, lexbound3 degree growth.
SequenceRecord pad_construction(const SequenceRecord& seq, const GrowthFunction& f, const Lemma& variant,
                                std::uint64_t node_budget = 1'000'000);

}  // namespace nullbound
