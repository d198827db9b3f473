#pragma once

#include <memory>
#include <string>

#include "hausdorff/common.hpp"

namespace hausdorff {

/// Arithmetic expressions over the variables u and x (plus x0..x3 for box
/// coordinates): + - * / ^, unary minus, parentheses, and the functions
/// abs, exp, log, sqrt, pow, min, max. Parsed by recursive descent;
/// errors carry the offending position.
class Expr {
 public:
  static Expr parse(const std::string& text);  // throws config_invalid

  double eval(double u, const Point& x) const;
  const std::string& text() const { return text_; }

  Expr(Expr&&) noexcept;
  Expr& operator=(Expr&&) noexcept;
  ~Expr();

  struct Node;  // exposed for the parser implementation

 private:
  Expr();
  std::unique_ptr<Node> root_;
  std::string text_;
};

}  // namespace hausdorff
