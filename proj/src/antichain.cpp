#include "nullbound/antichain.hpp"

#include <algorithm>

namespace nullbound {

namespace {

ExpNum prefix_sum(const std::vector<ExpNum>& coords, std::size_t end) {
  ExpNum s;
  for (std::size_t j = 0; j < end; ++j) s += coords[j];
  return s;
}

void check_degree(const PsiState& s, const GrowthFunction& f) {
  if (prefix_sum(s.coords, s.coords.size()) != f.eval(s.counter)) {
    throw Error("degree invariant violated at index " + s.counter.render());
  }
}

PsiState start_state(const GrowthFunction& f, unsigned m, const ExpNum& offset) {
  if (m < 1) throw PreconditionViolated("m must be positive");
  PsiState s{offset + ExpNum(1), std::vector<ExpNum>(m)};
  s.coords[0] = f.eval(s.counter);
  return s;
}

}  // namespace

const char* to_string(LengthMethod m) {
  switch (m) {
    case LengthMethod::psi_exact: return "psi_exact";
    case LengthMethod::m2_closed_form: return "m2_closed_form";
    case LengthMethod::m1_trivial: return "m1_trivial";
    case LengthMethod::brute_force: return "brute_force";
  }
  return "unknown";
}

PsiState psi_initial(const GrowthFunction& f, unsigned m) { return start_state(f, m, ExpNum(0)); }

std::optional<std::size_t> psi_pivot(const PsiState& s) {
  const std::size_t m = s.coords.size();
  for (std::size_t r = m - 1; r-- > 0;) {
    if (s.coords[r].sign() > 0) return r;
  }
  return std::nullopt;
}

std::optional<PsiState> psi_step(const PsiState& s, const GrowthFunction& f) {
  const auto r = psi_pivot(s);
  if (!r) return std::nullopt;
  const std::size_t m = s.coords.size();
  PsiState t = s;
  t.counter = s.counter + ExpNum(1);
  const ExpNum fresh = f.eval(t.counter) - f.eval(s.counter) + s.coords[m - 1] + ExpNum(1);
  t.coords[*r] -= ExpNum(1);
  if (*r == m - 2) {
    t.coords[m - 1] = fresh;
  } else {
    t.coords[*r + 1] = fresh;
    t.coords[m - 1] = ExpNum(0);
  }
  return t;
}

PsiState psi_fast_forward(const PsiState& s, const GrowthFunction& f) {
  const std::size_t m = s.coords.size();
  if (m < 2 || s.coords[m - 2].sign() <= 0) {
    throw PreconditionViolated("fast-forward needs a positive countdown coordinate");
  }
  PsiState t = s;
  t.counter = s.counter + s.coords[m - 2];
  t.coords[m - 2] = ExpNum(0);
  t.coords[m - 1] = f.eval(t.counter) - prefix_sum(s.coords, m - 2);
  return t;
}

ExtremalWalker::ExtremalWalker(GrowthFunction f, unsigned m, unsigned n, PsiOptions opts)
    : f_(std::move(f)), m_(m), n_(n), opts_(opts) {
  if (m_ < 1 || n_ < 1) throw PreconditionViolated("m and n must be positive");
  state_ = start_state(f_, m_, ExpNum(0));
}

std::optional<Block> ExtremalWalker::next() {
  if (component_ >= n_) return std::nullopt;
  const PsiState s = *state_;
  PsiState last = s;
  if (m_ >= 2 && s.coords[m_ - 2].sign() > 0) last = psi_fast_forward(s, f_);
  check_degree(last, f_);

  Block b;
  b.component = component_;
  b.first_index = s.counter;
  b.length = last.counter - s.counter + ExpNum(1);
  b.first = Tuple{s.coords, component_};
  b.last = Tuple{last.coords, component_};

  if (!psi_pivot(last)) {
    ++component_;
    if (component_ < n_) state_ = start_state(f_, m_, last.counter);
    return b;
  }
  // Every unit above the countdown coordinate costs one un-accelerated step.
  const ExpNum left(opts_.step_budget - std::min(steps_, opts_.step_budget));
  for (std::size_t j = 0; j + 2 < m_; ++j) {
    if (last.coords[j] > left) {
      throw Infeasible("coordinate " + std::to_string(j) + " = " + last.coords[j].render() +
                           " needs more single steps than the budget allows",
                       last, component_);
    }
  }
  if (++steps_ > opts_.step_budget) {
    throw Infeasible("step budget exhausted", last, component_);
  }
  state_ = psi_step(last, f_);
  return b;
}

Tuple block_tuple(const Block& b, const GrowthFunction& f, const ExpNum& t) {
  const std::size_t m = b.first.coords.size();
  if (t.sign() < 0 || t >= b.length) throw PreconditionViolated("position outside the block");
  if (t.is_zero() || m < 2) return b.first;
  Tuple out = b.first;
  out.coords[m - 2] = b.first.coords[m - 2] - t;
  out.coords[m - 1] = f.eval(b.first_index + t) - prefix_sum(out.coords, m - 1);
  return out;
}

ExpNum psi_run(const GrowthFunction& f, unsigned m, const PsiOptions& opts) {
  ExtremalWalker walker(f, m, 1, opts);
  ExpNum end;
  while (auto b = walker.next()) end = b->first_index + b->length - ExpNum(1);
  return end;
}

LengthResult max_length(const GrowthFunction& f, unsigned m, unsigned n, const PsiOptions& opts) {
  if (m < 1 || n < 1) throw PreconditionViolated("m and n must be positive");
  LengthResult out;
  if (m == 1) {
    out.method = LengthMethod::m1_trivial;
    out.per_component.assign(n, ExpNum(1));
    out.total = ExpNum(static_cast<std::uint64_t>(n));
    return out;
  }
  ExpNum psi;
  for (unsigned j = 0; j < n; ++j) {
    ExpNum len;
    if (m == 2) {
      // b_{j+1} = f(b_j + 1) + b_j + 1
      len = f.eval(psi + ExpNum(1)) + ExpNum(1);
    } else {
      try {
        len = psi_run(f.shift(psi), m, opts);
      } catch (Infeasible& e) {
        e.set_component(j);
        throw;
      }
    }
    out.per_component.push_back(len);
    psi += len;
  }
  out.total = psi;
  out.method = m == 2 ? LengthMethod::m2_closed_form : LengthMethod::psi_exact;
  return out;
}

std::vector<Block> extremal_blocks(const GrowthFunction& f, unsigned m, unsigned n,
                                   const PsiOptions& opts) {
  std::vector<Block> out;
  ExtremalWalker walker(f, m, n, opts);
  while (auto b = walker.next()) out.push_back(std::move(*b));
  return out;
}

std::vector<Tuple> extremal_sequence(const GrowthFunction& f, unsigned m, unsigned n,
                                     std::uint64_t emit_limit, const PsiOptions& opts) {
  std::vector<Tuple> out;
  ExtremalWalker walker(f, m, n, opts);
  while (out.size() < emit_limit) {
    const auto b = walker.next();
    if (!b) break;
    for (std::uint64_t t = 0; out.size() < emit_limit && ExpNum(t) < b->length; ++t) {
      out.push_back(block_tuple(*b, f, ExpNum(t)));
    }
  }
  return out;
}

VerifyResult verify(const SequenceRecord& seq) {
  VerifyResult r;
  const auto& a = seq.elements;
  std::optional<std::pair<std::size_t, std::size_t>> reverse_witness;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (leq(a[i], a[j])) {
        r.dicksonian = false;
        r.antichain = false;
        if (!r.witness) r.witness = {i, j};
      } else if (leq(a[j], a[i])) {
        r.antichain = false;
        if (!reverse_witness) reverse_witness = {i, j};
      }
    }
  }
  if (!r.witness) r.witness = reverse_witness;
  return r;
}

SequenceRecord reorder(const SequenceRecord& seq) {
  validate(seq);
  const VerifyResult v = verify(seq);
  if (!v.antichain) throw PreconditionViolated("not an antichain");
  SequenceRecord out = seq;
  std::stable_sort(out.elements.begin(), out.elements.end(), [](const Tuple& a, const Tuple& b) {
    const auto c = deglex_compare(a, b);
    if (c != 0) return c < 0;
    return a.component < b.component;
  });
  validate(out);
  out.dicksonian = true;
  out.antichain = true;
  return out;
}

}  // namespace nullbound
