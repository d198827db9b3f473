#include "hausdorff/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <vector>

namespace hausdorff {

namespace {
enum class Op { constant, var_u, var_x, add, sub, mul, div, pow_op, neg, call1, call2 };
enum class Fn { abs_fn, exp_fn, log_fn, sqrt_fn, pow_fn, min_fn, max_fn };
}  // namespace

struct Expr::Node {
  Op op = Op::constant;
  double value = 0.0;
  int var_index = 0;  // coordinate for var_x
  Fn fn = Fn::abs_fn;
  std::unique_ptr<Node> a, b;
};

Expr::Expr() = default;
Expr::Expr(Expr&&) noexcept = default;
Expr& Expr::operator=(Expr&&) noexcept = default;
Expr::~Expr() = default;

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  std::unique_ptr<Expr::Node> run() {
    auto n = parse_sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return n;
  }

 private:
  using NodePtr = std::unique_ptr<Expr::Node>;

  [[noreturn]] void fail(const char* msg) const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "expression error at position %zu: %s in \"%s\"", pos_, msg,
                  s_.c_str());
    throw Error(Errc::config_invalid, buf);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_unique<Expr::Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  NodePtr parse_sum() {
    auto lhs = parse_product();
    for (;;) {
      if (eat('+'))
        lhs = make(Op::add, std::move(lhs), parse_product());
      else if (eat('-'))
        lhs = make(Op::sub, std::move(lhs), parse_product());
      else
        return lhs;
    }
  }

  NodePtr parse_product() {
    auto lhs = parse_unary();
    for (;;) {
      if (eat('*'))
        lhs = make(Op::mul, std::move(lhs), parse_unary());
      else if (eat('/'))
        lhs = make(Op::div, std::move(lhs), parse_unary());
      else
        return lhs;
    }
  }

  NodePtr parse_unary() {
    if (eat('-')) return make(Op::neg, parse_unary());
    if (eat('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    auto base = parse_atom();
    if (eat('^')) {
      // Right-associative; the exponent may itself be signed.
      auto expo = parse_unary();
      return make(Op::pow_op, std::move(base), std::move(expo));
    }
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto n = parse_sum();
      if (!eat(')')) fail("missing ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    fail("expected a number, name, or '('");
  }

  NodePtr parse_number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("bad number");
    pos_ += static_cast<std::size_t>(end - begin);
    auto n = make(Op::constant);
    n->value = v;
    return n;
  }

  NodePtr parse_name() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    if (name == "u") return make(Op::var_u);
    if (name == "x" || name == "t") return make(Op::var_x);
    if (name.size() == 2 && name[0] == 'x' && name[1] >= '0' && name[1] <= '3') {
      auto n = make(Op::var_x);
      n->var_index = name[1] - '0';
      return n;
    }
    if (name == "inf") {
      auto n = make(Op::constant);
      n->value = kInf;
      return n;
    }
    const auto fn1 = [&](Fn f) {
      if (!eat('(')) fail("expected '(' after function name");
      auto a = parse_sum();
      if (!eat(')')) fail("missing ')'");
      auto n = make(Op::call1, std::move(a));
      n->fn = f;
      return n;
    };
    const auto fn2 = [&](Fn f) {
      if (!eat('(')) fail("expected '(' after function name");
      auto a = parse_sum();
      if (!eat(',')) fail("expected ','");
      auto b = parse_sum();
      if (!eat(')')) fail("missing ')'");
      auto n = make(Op::call2, std::move(a), std::move(b));
      n->fn = f;
      return n;
    };
    if (name == "abs") return fn1(Fn::abs_fn);
    if (name == "exp") return fn1(Fn::exp_fn);
    if (name == "log") return fn1(Fn::log_fn);
    if (name == "sqrt") return fn1(Fn::sqrt_fn);
    if (name == "pow") return fn2(Fn::pow_fn);
    if (name == "min") return fn2(Fn::min_fn);
    if (name == "max") return fn2(Fn::max_fn);
    fail("unknown name");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

double eval_node(const Expr::Node& n, double u, const Point& x) {
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::var_u: return u;
    case Op::var_x: return n.var_index < x.dim() ? x[n.var_index] : x.x();
    case Op::add: return eval_node(*n.a, u, x) + eval_node(*n.b, u, x);
    case Op::sub: return eval_node(*n.a, u, x) - eval_node(*n.b, u, x);
    case Op::mul: return eval_node(*n.a, u, x) * eval_node(*n.b, u, x);
    case Op::div: return eval_node(*n.a, u, x) / eval_node(*n.b, u, x);
    case Op::pow_op: return std::pow(eval_node(*n.a, u, x), eval_node(*n.b, u, x));
    case Op::neg: return -eval_node(*n.a, u, x);
    case Op::call1: {
      const double a = eval_node(*n.a, u, x);
      switch (n.fn) {
        case Fn::abs_fn: return std::abs(a);
        case Fn::exp_fn: return std::exp(a);
        case Fn::log_fn: return std::log(a);
        case Fn::sqrt_fn: return std::sqrt(a);
        default: return a;
      }
    }
    case Op::call2: {
      const double a = eval_node(*n.a, u, x);
      const double b = eval_node(*n.b, u, x);
      switch (n.fn) {
        case Fn::pow_fn: return std::pow(a, b);
        case Fn::min_fn: return std::min(a, b);
        case Fn::max_fn: return std::max(a, b);
        default: return a;
      }
    }
  }
  return 0.0;
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.root_ = Parser(text).run();
  e.text_ = text;
  return e;
}

double Expr::eval(double u, const Point& x) const { return eval_node(*root_, u, x); }

}  // namespace hausdorff
