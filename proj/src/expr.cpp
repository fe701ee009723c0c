#include "nullbound/expr.hpp"

namespace nullbound {

struct Expr::Node {
  Kind kind;
  ExpNum value;
  mpq_class q;
  std::string name;
  std::vector<Expr> kids;
};

namespace {

// Binding strength: sums 1, products 2, powers 3, atoms 4.
int strength_of_number(const ExpNum& v) {
  const std::string s = v.render();
  if (s.find_first_not_of("0123456789") == std::string::npos) return 4;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && (s[i] == '+' || s[i] == '-')) return 1;
  }
  return 3;
}

}  // namespace

Expr Expr::make(Kind k, std::vector<Expr> kids) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->kids = std::move(kids);
  return Expr(std::move(n));
}

Expr Expr::number(ExpNum v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::number;
  n->value = std::move(v);
  return Expr(std::move(n));
}

Expr Expr::rational(mpq_class q) {
  q.canonicalize();
  if (q.get_den() == 1) return number(ExpNum(q.get_num()));
  auto n = std::make_shared<Node>();
  n->kind = Kind::rational;
  n->q = std::move(q);
  return Expr(std::move(n));
}

Expr Expr::symbol(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::symbol;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::pow(Expr base, Expr exponent) { return make(Kind::pow, {std::move(base), std::move(exponent)}); }
Expr Expr::binom(Expr top, Expr bottom) { return make(Kind::binom, {std::move(top), std::move(bottom)}); }
Expr Expr::ack(Expr m, Expr n) { return make(Kind::ack, {std::move(m), std::move(n)}); }
Expr Expr::max(std::vector<Expr> args) { return make(Kind::max, std::move(args)); }
Expr Expr::ceil(Expr x) { return make(Kind::ceil, {std::move(x)}); }
Expr Expr::log(Expr base, Expr x) { return make(Kind::log, {std::move(base), std::move(x)}); }
Expr Expr::finv(Expr x) { return make(Kind::finv, {std::move(x)}); }

Expr operator+(Expr a, Expr b) { return Expr::make(Expr::Kind::add, {std::move(a), std::move(b)}); }
Expr operator-(Expr a, Expr b) { return Expr::make(Expr::Kind::sub, {std::move(a), std::move(b)}); }
Expr operator*(Expr a, Expr b) { return Expr::make(Expr::Kind::mul, {std::move(a), std::move(b)}); }
Expr operator/(Expr a, Expr b) { return Expr::make(Expr::Kind::div, {std::move(a), std::move(b)}); }

Expr::Kind Expr::kind() const { return node_->kind; }

std::string Expr::render() const {
  const Node& n = *node_;
  auto strength = [](const Expr& e) {
    switch (e.node_->kind) {
      case Kind::number: return strength_of_number(e.node_->value);
      case Kind::rational: return 2;
      case Kind::add:
      case Kind::sub: return 1;
      case Kind::mul:
      case Kind::div: return 2;
      case Kind::pow: return 3;
      default: return 4;
    }
  };
  auto wrap = [&](const Expr& e, int need) {
    const std::string s = e.render();
    return strength(e) < need ? "(" + s + ")" : s;
  };
  auto list = [&](const std::vector<Expr>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i > 0) out += ',';
      out += xs[i].render();
    }
    return out;
  };
  switch (n.kind) {
    case Kind::number: return n.value.render();
    case Kind::rational: return n.q.get_str();
    case Kind::symbol: return n.name;
    case Kind::add: return n.kids[0].render() + "+" + wrap(n.kids[1], 2);
    case Kind::sub: return n.kids[0].render() + "-" + wrap(n.kids[1], 2);
    case Kind::mul: return wrap(n.kids[0], 2) + "*" + wrap(n.kids[1], 3);
    case Kind::div: return wrap(n.kids[0], 2) + "/" + wrap(n.kids[1], 3);
    case Kind::pow: return wrap(n.kids[0], 4) + "^" + wrap(n.kids[1], 4);
    case Kind::binom: return "C(" + list(n.kids) + ")";
    case Kind::ack: return "A(" + list(n.kids) + ")";
    case Kind::max: return "max(" + list(n.kids) + ")";
    case Kind::ceil: return "⌈" + n.kids[0].render() + "⌉";
    case Kind::log: {
      const std::string b = n.kids[0].render();
      const bool token = strength(n.kids[0]) == 4 && b.find_first_not_of("0123456789") == std::string::npos;
      return "log_" + (token && b.size() == 1 ? b : "{" + b + "}") + "(" + n.kids[1].render() + ")";
    }
    case Kind::finv: return "f^{-1}(" + n.kids[0].render() + ")";
  }
  return {};
}

}  // namespace nullbound
