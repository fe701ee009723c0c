#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nullbound/growth.hpp"
#include "nullbound/hilbert.hpp"
#include "nullbound/numlit.hpp"

namespace nullbound {

/// Counter i and the current tuple mu_i of the extremal construction.
struct PsiState {
  ExpNum counter;
  std::vector<ExpNum> coords;

  friend bool operator==(const PsiState&, const PsiState&) = default;
};

class Infeasible : public Error {
 public:
  Infeasible(const std::string& what, PsiState state, std::optional<unsigned> component = {})
      : Error(what), state_(std::move(state)), component_(component) {}
  const PsiState& state() const { return state_; }
  std::optional<unsigned> component() const { return component_; }
  void set_component(unsigned c) { component_ = c; }

 private:
  PsiState state_;
  std::optional<unsigned> component_;
};

struct PsiOptions {
  /// Cap on single steps that are not fast-forwarded.
  std::uint64_t step_budget = 1'000'000;
};

enum class LengthMethod { psi_exact, m2_closed_form, m1_trivial, brute_force };
const char* to_string(LengthMethod m);

struct LengthResult {
  ExpNum total;
  std::vector<ExpNum> per_component;
  LengthMethod method = LengthMethod::psi_exact;
};

/// (1, (f(1), 0, ..., 0)).
PsiState psi_initial(const GrowthFunction& f, unsigned m);
/// Largest index r <= m-2 with coords[r] > 0, or nullopt when the state is terminal.
std::optional<std::size_t> psi_pivot(const PsiState& s);
/// One application of the recursion; nullopt at a terminal state.
std::optional<PsiState> psi_step(const PsiState& s, const GrowthFunction& f);
/// All u = coords[m-2] countdown steps at once. Requires u > 0.
PsiState psi_fast_forward(const PsiState& s, const GrowthFunction& f);
/// Length of the extremal antichain sequence in one component.
ExpNum psi_run(const GrowthFunction& f, unsigned m, const PsiOptions& opts = {});

LengthResult max_length(const GrowthFunction& f, unsigned m, unsigned n, const PsiOptions& opts = {});

/// A maximal run of countdown steps: the tuples at global indices
/// first_index, ..., first_index + length - 1, all in one component.
struct Block {
  unsigned component = 0;
  ExpNum first_index;
  ExpNum length;
  Tuple first;
  Tuple last;
};

/// Walks the extremal sequence of Z^m x n block by block.
class ExtremalWalker {
 public:
  ExtremalWalker(GrowthFunction f, unsigned m, unsigned n, PsiOptions opts = {});
  std::optional<Block> next();

 private:
  GrowthFunction f_;
  unsigned m_;
  unsigned n_;
  PsiOptions opts_;
  unsigned component_ = 0;
  std::optional<PsiState> state_;
  std::uint64_t steps_ = 0;
};

/// The tuple t positions into a block (0 <= t < length).
Tuple block_tuple(const Block& b, const GrowthFunction& f, const ExpNum& t);

std::vector<Block> extremal_blocks(const GrowthFunction& f, unsigned m, unsigned n,
                                   const PsiOptions& opts = {});
/// The first emit_limit tuples of the extremal sequence.
std::vector<Tuple> extremal_sequence(const GrowthFunction& f, unsigned m, unsigned n,
                                     std::uint64_t emit_limit, const PsiOptions& opts = {});

struct VerifyResult {
  bool dicksonian = true;
  bool antichain = true;
  /// First pair (i, j), i < j, with a_i <= a_j; failing that, the first with a_j <= a_i.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};
VerifyResult verify(const SequenceRecord& seq);

/// Deg-lex ascending reordering of an antichain; rechecks the growth certificate.
SequenceRecord reorder(const SequenceRecord& seq);

struct BruteResult {
  std::uint64_t length = 0;
  SequenceRecord witness;
};

/// Exact maximal antichain length by exhaustive search. Throws BudgetExceeded when the
/// length exceeds length_cap or the degrees needed exceed degree_cap (at most 255).
BruteResult brute_max_length(const GrowthFunction& f, unsigned m, unsigned n,
                             std::uint64_t length_cap, std::uint64_t degree_cap = 255);

}  // namespace nullbound
