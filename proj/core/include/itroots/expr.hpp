#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "itroots/geometry.hpp"

namespace itroots {

/// Declared modulus of continuity, linear form: |h(x)-h(y)| <= lip * |x-y|.
/// This is the bound every certified estimate is conditional on.
struct Modulus {
  Rat lip;
  Rat operator()(const Rat& t) const { return lip * t; }
};

/// A scalar expression over coordinates x1..xm with rational constants and
/// the operations + - * min max. Evaluation is exact; interval bounds and a
/// Lipschitz constant over the unit cube are derived mechanically.
class Expr {
 public:
  static Expr constant(Rat v);
  static Expr coord(int i);
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr min(Expr a, Expr b);
  static Expr max(Expr a, Expr b);
  static Expr neg(Expr a);

  Rat evaluate(const Point& x) const;
  /// Inclusive bounds of the expression over [0,1]^m.
  std::pair<Rat, Rat> interval_unit_cube() const;
  /// Sup-norm Lipschitz bound over [0,1]^m.
  Rat lipschitz_unit_cube() const;

  std::string to_string() const;

 private:
  enum class Op { Const, Coord, Add, Sub, Mul, Min, Max, Neg };
  Op op_ = Op::Const;
  Rat value_;
  int coord_ = 0;
  std::vector<Expr> kids_;
};

/// A map I^m -> R^m given componentwise by expressions. The CLI accepts the
/// textual form "comp1, comp2, ..." (top-level commas separate components)
/// plus the shorthands "id" and "const(...)".
struct ExprMap {
  int arity = 0;
  std::vector<Expr> comps;

  Point evaluate(const Point& x) const;
  Rat lipschitz_inf() const;
  Modulus modulus() const { return Modulus{lipschitz_inf()}; }
  /// Interval-arithmetic proof that the map sends [0,1]^m into itself.
  bool certified_self_map_of_unit_cube() const;

  static ExprMap parse(const std::string& src, int m);
  static ExprMap identity(int m);
  std::string to_string() const;
};

/// Type-erased exactly-evaluable map, the common currency of the pipelines.
struct Evaluable {
  int arity = 0;
  std::function<Point(const Point&)> fn;

  Point operator()(const Point& x) const { return fn(x); }
};

Evaluable as_evaluable(const ExprMap& m);

}  // namespace itroots
