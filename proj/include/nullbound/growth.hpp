#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "nullbound/numlit.hpp"

namespace nullbound {

/// Non-decreasing bound function f on i >= 1 drawn from a few closed families:
///   pow2(l)         f(i) = 2^i * l
///   geometric(b, l) f(i) = floor(b^i * l), b and l positive rationals
///   affine(p, q)    f(i) = p*i + q
///   table(v)        f(i) = v[i-1], constant after the last entry
class GrowthFunction {
 public:
  enum class Family { pow2, geometric, affine, table };

  static GrowthFunction pow2(ExpNum ell);
  static GrowthFunction geometric(mpq_class b, mpq_class ell);
  static GrowthFunction affine(mpz_class p, ExpNum q);
  static GrowthFunction table(std::vector<ExpNum> values);

  /// "pow2:l" | "geom:bn/bd:ln/ld" | "affine:p:q" | "table:v1,v2,..."
  static GrowthFunction parse(std::string_view text);
  std::string render() const;

  Family family() const { return family_; }
  const ExpNum& ell() const { return ell_; }
  const mpq_class& ratio() const { return ratio_; }
  const mpq_class& ell_q() const { return ell_q_; }
  const mpz_class& slope() const { return slope_; }
  const ExpNum& offset() const { return ell_; }
  const std::vector<ExpNum>& values() const { return values_; }

  /// f(i) for i >= 1. Symbolic i is accepted by pow2 and affine.
  ExpNum eval(const ExpNum& i) const;
  /// Unfloored value; differs from eval only for the geometric family. Concrete i only.
  mpq_class eval_exact(std::uint64_t i) const;
  /// Least k >= 1 with f(k) >= x.
  NatIndex inv_ceil(const ExpNum& x) const;
  /// x -> f(x + s).
  GrowthFunction shift(const ExpNum& s) const;
  /// x -> c * f(x), c >= 1.
  GrowthFunction scale(const mpz_class& c) const;

  friend bool operator==(const GrowthFunction& a, const GrowthFunction& b);

 private:
  GrowthFunction() = default;

  Family family_ = Family::affine;
  ExpNum ell_;          // pow2: l; affine: q
  mpz_class slope_;     // affine: p
  mpq_class ratio_;     // geometric: b
  mpq_class ell_q_;     // geometric: l
  std::vector<ExpNum> values_;
};

}  // namespace nullbound
