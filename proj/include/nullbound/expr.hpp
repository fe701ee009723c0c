#pragma once

#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "nullbound/numlit.hpp"

namespace nullbound {

/// Immutable expression tree for quantities that are rendered rather than evaluated.
class Expr {
 public:
  enum class Kind { number, rational, symbol, add, sub, mul, div, pow, binom, ack, max, ceil, log, finv };

  static Expr number(ExpNum v);
  static Expr rational(mpq_class q);
  static Expr symbol(std::string name);
  static Expr pow(Expr base, Expr exponent);
  static Expr binom(Expr top, Expr bottom);
  static Expr ack(Expr m, Expr n);
  static Expr max(std::vector<Expr> args);
  static Expr ceil(Expr x);
  /// log_base(x)
  static Expr log(Expr base, Expr x);
  /// f^{-1}(x), the generic least-index inverse.
  static Expr finv(Expr x);

  friend Expr operator+(Expr a, Expr b);
  friend Expr operator-(Expr a, Expr b);
  friend Expr operator*(Expr a, Expr b);
  friend Expr operator/(Expr a, Expr b);

  Kind kind() const;
  std::string render() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Expr make(Kind k, std::vector<Expr> kids);
  std::shared_ptr<const Node> node_;
};

}  // namespace nullbound
