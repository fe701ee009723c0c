#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "nullbound/growth.hpp"
#include "nullbound/numlit.hpp"

namespace nullbound {

/// A point of Z_{>=0}^m x n.
struct Tuple {
  std::vector<ExpNum> coords;
  unsigned component = 0;

  ExpNum degree() const;
  /// "(a,b,c)" for component 0, "(a,b,c)#k" otherwise.
  std::string render() const;
  friend bool operator==(const Tuple&, const Tuple&) = default;
};

/// Same component and coordinatewise <=.
bool leq(const Tuple& a, const Tuple& b);
/// Degree-lexicographic order within Z^m (first coordinate most significant); components ignored.
std::strong_ordering deglex_compare(const Tuple& a, const Tuple& b);

struct SequenceRecord {
  unsigned m = 1;
  unsigned n = 1;
  std::vector<Tuple> elements;
  std::optional<bool> dicksonian;
  std::optional<bool> antichain;
  std::optional<GrowthFunction> growth;
};

/// Throws PreconditionViolated if shapes or components are out of range, or if the growth
/// certificate deg(elements[i]) <= f(i+1) fails.
void validate(const SequenceRecord& seq);

/// Machine-size coordinates; BudgetExceeded if a coordinate is symbolic or too large.
std::vector<std::uint64_t> small_coords(const Tuple& t);

enum class HsMethod { automatic, enumerate, inclusion_exclusion };

/// Number of degree-d points of Z^m x n dominated by none of the first i elements.
mpz_class hs(const SequenceRecord& seq, std::size_t i, std::uint64_t d,
             HsMethod method = HsMethod::automatic);

/// Whether the up-set of the first i elements is, in every component and degree, an initial
/// segment of the descending lex order.
bool is_compressed(const SequenceRecord& seq, std::size_t i);

/// Lexicographic predecessor among tuples of equal degree, or nullopt at the minimum.
std::optional<std::vector<std::uint64_t>> lex_predecessor(std::vector<std::uint64_t> xi);

}  // namespace nullbound
