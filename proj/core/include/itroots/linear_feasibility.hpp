#pragma once

#include <optional>
#include <vector>

#include "itroots/geometry.hpp"

namespace itroots {

/// Axis-aligned box (product of closed intervals).
struct Box {
  Point lo, hi;

  bool contains(const Point& x) const;
  bool strictly_contains(const Point& x) const;
};

/// One linear constraint sum(coeffs * x) REL rhs.
struct LinearConstraint {
  enum class Rel { Eq, Le, Lt };
  std::vector<Rat> coeffs;
  Rel rel = Rel::Le;
  Rat rhs;
};

/// Exact feasibility by Gaussian substitution of the equalities followed by
/// Fourier-Motzkin elimination; strictness is tracked through combinations.
/// Returns a witness assignment when the system is feasible.
std::optional<std::vector<Rat>> solve_feasible(int nvars, std::vector<LinearConstraint> rows);

/// Decides P cap Q = empty exactly; on intersection returns a rational
/// witness point (re-verified internally before returning).
std::optional<Point> simplices_intersect(const Simplex& p, const Simplex& q);

/// Witness of P cap B, if any.
std::optional<Point> simplex_box_intersect(const Simplex& p, const Box& box);

/// True when the closed simplices meet only in the simplex spanned by their
/// shared vertices (or not at all). `shared` lists indices into p.vertices /
/// q.vertices of identified vertex pairs.
bool proper_intersection(const Simplex& p, const Simplex& q,
                         const std::vector<std::pair<int, int>>& shared);

}  // namespace itroots
