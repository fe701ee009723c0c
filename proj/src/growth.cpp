#include "nullbound/growth.hpp"

#include <cmath>
#include <stdexcept>

namespace nullbound {

namespace {

constexpr std::uint64_t kGeometricIndexCap = std::uint64_t{1} << 32;

mpz_class pow_ui(const mpz_class& b, std::uint64_t e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

mpq_class pow_q(const mpq_class& b, std::uint64_t e) {
  mpq_class r(pow_ui(b.get_num(), e), pow_ui(b.get_den(), e));
  r.canonicalize();
  return r;
}

std::uint64_t concrete_index(const ExpNum& i, const char* what) {
  const auto v = i.to_uint64();
  if (!v) throw Unsupported(std::string(what) + " needs a concrete machine-size index");
  return *v;
}

mpq_class parse_rational(std::string_view text) {
  try {
    mpq_class q(std::string(text), 10);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational '" + std::string(text) + "'");
  }
}

mpz_class parse_integer(std::string_view text) {
  try {
    return mpz_class(std::string(text), 10);
  } catch (const std::invalid_argument&) {
    throw ParseError("bad integer '" + std::string(text) + "'");
  }
}

std::string render_rational(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double log2_of(const mpz_class& v) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

}  // namespace

GrowthFunction GrowthFunction::pow2(ExpNum ell) {
  if (ell.sign() <= 0) throw PreconditionViolated("pow2 family needs l > 0");
  GrowthFunction f;
  f.family_ = Family::pow2;
  f.ell_ = std::move(ell);
  return f;
}

GrowthFunction GrowthFunction::geometric(mpq_class b, mpq_class ell) {
  b.canonicalize();
  ell.canonicalize();
  if (b <= 1) throw PreconditionViolated("geometric family needs b > 1");
  if (ell <= 0) throw PreconditionViolated("geometric family needs l > 0");
  GrowthFunction f;
  f.family_ = Family::geometric;
  f.ratio_ = std::move(b);
  f.ell_q_ = std::move(ell);
  return f;
}

GrowthFunction GrowthFunction::affine(mpz_class p, ExpNum q) {
  if (p < 1) throw PreconditionViolated("affine family needs p >= 1");
  if (q.sign() < 0) throw PreconditionViolated("affine family needs q >= 0");
  GrowthFunction f;
  f.family_ = Family::affine;
  f.slope_ = std::move(p);
  f.ell_ = std::move(q);
  return f;
}

GrowthFunction GrowthFunction::table(std::vector<ExpNum> values) {
  if (values.empty()) throw PreconditionViolated("table family needs at least one value");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].sign() < 0) throw PreconditionViolated("table values must be nonnegative");
    if (i > 0 && values[i] < values[i - 1]) {
      throw PreconditionViolated("table values must be non-decreasing");
    }
  }
  GrowthFunction f;
  f.family_ = Family::table;
  f.values_ = std::move(values);
  return f;
}

GrowthFunction GrowthFunction::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("growth function needs 'family:args'");
  const std::string_view name = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  try {
    if (name == "pow2") return pow2(ExpNum::parse(rest));
    if (name == "geom") {
      const auto sep = rest.find(':');
      if (sep == std::string_view::npos) throw ParseError("geom needs 'geom:b:l'");
      return geometric(parse_rational(rest.substr(0, sep)), parse_rational(rest.substr(sep + 1)));
    }
    if (name == "affine") {
      const auto sep = rest.find(':');
      if (sep == std::string_view::npos) throw ParseError("affine needs 'affine:p:q'");
      return affine(parse_integer(rest.substr(0, sep)), ExpNum::parse(rest.substr(sep + 1)));
    }
    if (name == "table") {
      std::vector<ExpNum> values;
      std::size_t start = 0;
      while (start <= rest.size()) {
        const auto comma = rest.find(',', start);
        const auto end = comma == std::string_view::npos ? rest.size() : comma;
        values.push_back(ExpNum::parse(rest.substr(start, end - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      return table(std::move(values));
    }
  } catch (const PreconditionViolated& e) {
    throw ParseError(std::string("invalid growth function '") + std::string(text) + "': " + e.what());
  }
  throw ParseError("unknown growth family '" + std::string(name) + "'");
}

std::string GrowthFunction::render() const {
  switch (family_) {
    case Family::pow2:
      return "pow2:" + ell_.render();
    case Family::geometric:
      return "geom:" + render_rational(ratio_) + ":" + render_rational(ell_q_);
    case Family::affine:
      return "affine:" + slope_.get_str() + ":" + ell_.render();
    case Family::table: {
      std::string out = "table:";
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i > 0) out += ',';
        out += values_[i].render();
      }
      return out;
    }
  }
  return {};
}

ExpNum GrowthFunction::eval(const ExpNum& i) const {
  if (i < ExpNum(1)) throw PreconditionViolated("growth functions are defined for i >= 1");
  switch (family_) {
    case Family::pow2:
      return shl(ell_, i);
    case Family::affine:
      return mul_small(i, slope_) + ell_;
    case Family::geometric: {
      const mpq_class v = eval_exact(concrete_index(i, "geometric evaluation"));
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
      return ExpNum(fl);
    }
    case Family::table: {
      const std::uint64_t k = concrete_index(i, "table evaluation");
      return values_[std::min<std::uint64_t>(k, values_.size()) - 1];
    }
  }
  return {};
}

mpq_class GrowthFunction::eval_exact(std::uint64_t i) const {
  if (family_ == Family::geometric) {
    if (i > kGeometricIndexCap) throw BudgetExceeded("geometric index too large");
    return pow_q(ratio_, i) * ell_q_;
  }
  return mpq_class(eval(ExpNum(i)).concrete());
}

NatIndex GrowthFunction::inv_ceil(const ExpNum& x) const {
  const ExpNum one(1);
  switch (family_) {
    case Family::pow2: {
      if (x <= eval(one)) return NatIndex(one);
      // l*2^k lies in [2^(a+k), 2^(a+k+1)), so the answer is b-a or b-a+1.
      const ExpNum k = floor_log2(x) - floor_log2(ell_);
      return NatIndex(shl(ell_, k) >= x ? k : k + one);
    }
    case Family::affine: {
      const ExpNum gap = x - ell_;
      if (gap <= ExpNum(slope_)) return NatIndex(one);
      if (slope_ == 1) return NatIndex(gap);
      if (!gap.is_concrete()) throw Unsupported("ceiling division of a symbolic value");
      mpz_class k;
      mpz_cdiv_q(k.get_mpz_t(), gap.concrete().get_mpz_t(), slope_.get_mpz_t());
      return NatIndex(ExpNum(k));
    }
    case Family::geometric: {
      if (!x.is_concrete()) throw Unsupported("geometric inverse of a symbolic value");
      const mpz_class& xv = x.concrete();
      auto reaches = [&](std::uint64_t k) { return eval_exact(k) >= xv; };
      if (reaches(1)) return NatIndex(one);
      const double est = (log2_of(xv) - std::log2(ell_q_.get_d())) / std::log2(ratio_.get_d());
      std::uint64_t k = est < 1 ? 1 : static_cast<std::uint64_t>(std::ceil(est));
      while (k > 1 && reaches(k - 1)) --k;
      while (!reaches(k)) ++k;
      return NatIndex(ExpNum(k));
    }
    case Family::table: {
      for (std::size_t k = 0; k < values_.size(); ++k) {
        if (values_[k] >= x) return NatIndex(ExpNum(static_cast<std::uint64_t>(k + 1)));
      }
      throw Unsupported("table function never reaches " + x.render());
    }
  }
  return NatIndex(one);
}

GrowthFunction GrowthFunction::shift(const ExpNum& s) const {
  if (s.sign() < 0) throw PreconditionViolated("shift amount must be nonnegative");
  switch (family_) {
    case Family::pow2:
      return pow2(shl(ell_, s));
    case Family::affine:
      return affine(slope_, ell_ + mul_small(s, slope_));
    case Family::geometric: {
      const auto k = s.to_uint64();
      if (!k || *k > kGeometricIndexCap) throw Unsupported("geometric shift needs a small concrete amount");
      return geometric(ratio_, ell_q_ * pow_q(ratio_, *k));
    }
    case Family::table: {
      const auto k = s.to_uint64();
      if (!k || *k >= values_.size()) return table({values_.back()});
      return table(std::vector<ExpNum>(values_.begin() + static_cast<std::ptrdiff_t>(*k), values_.end()));
    }
  }
  return *this;
}

GrowthFunction GrowthFunction::scale(const mpz_class& c) const {
  if (c < 1) throw PreconditionViolated("scale factor must be >= 1");
  switch (family_) {
    case Family::pow2:
      return pow2(mul_small(ell_, c));
    case Family::affine:
      return affine(slope_ * c, mul_small(ell_, c));
    case Family::geometric:
      return geometric(ratio_, ell_q_ * c);
    case Family::table: {
      std::vector<ExpNum> v;
      v.reserve(values_.size());
      for (const auto& x : values_) v.push_back(mul_small(x, c));
      return table(std::move(v));
    }
  }
  return *this;
}

bool operator==(const GrowthFunction& a, const GrowthFunction& b) {
  if (a.family_ != b.family_) return false;
  switch (a.family_) {
    case GrowthFunction::Family::pow2:
      return a.ell_ == b.ell_;
    case GrowthFunction::Family::affine:
      return a.slope_ == b.slope_ && a.ell_ == b.ell_;
    case GrowthFunction::Family::geometric:
      return a.ratio_ == b.ratio_ && a.ell_q_ == b.ell_q_;
    case GrowthFunction::Family::table:
      return a.values_ == b.values_;
  }
  return false;
}

}  // namespace nullbound
