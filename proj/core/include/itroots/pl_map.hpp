#pragma once

#include <optional>
#include <vector>

#include "itroots/complex.hpp"
#include "itroots/expr.hpp"

namespace itroots {

/// Continuous piecewise affine linear self-map, given by a complex and one
/// image point per vertex; values anywhere else come from barycentric
/// interpolation, so shared faces are automatically consistent.
struct PLMap {
  SimplicialComplex complex;
  std::vector<Point> images;

  int dim() const { return complex.dim; }
};

enum class SelfMapCheck {
  None,
  Carrier,  // every image must lie in the carrier (exact point location)
};

/// Builds the interpolated map. Throws on a table-length mismatch, and, when
/// the check is requested, on any image outside the carrier (nothing is ever
/// clamped).
PLMap interpolate(SimplicialComplex k, std::vector<Point> images,
                  SelfMapCheck check = SelfMapCheck::Carrier);

/// Exact evaluation. Throws when x is outside the carrier.
Point evaluate(const PLMap& f, const Point& x);

/// Exact sup distance between two maps on the same complex: the difference
/// is affine per simplex, so the sup over the carrier is attained at a
/// vertex.
Rat sup_distance_vertices(const PLMap& f, const PLMap& g);

/// Certified upper bound on sup |f - h|: vertex error plus 2*omega(mesh).
/// Sound whenever omega really bounds h's modulus of continuity.
Rat sup_distance_to_function(const PLMap& f, const Evaluable& h, const Modulus& omega);

/// Max over pieces of the sup-norm operator norm (max absolute row sum) of
/// the piece matrix; a global Lipschitz constant since the carrier is convex.
Rat lipschitz_constant(const PLMap& f);

/// The unique affine map agreeing with f on one full-dimensional piece.
struct AffinePiece {
  std::vector<std::vector<Rat>> matrix;  // m x m
  Point offset;

  Point apply(const Point& x) const;
  /// Sup-norm operator norm of the linear part.
  Rat inf_operator_norm() const;
  /// Exact determinant of the linear part.
  Rat determinant() const;
};

AffinePiece affine_piece(const PLMap& f, int top_id);

/// True iff the piece's image vertex tuple is geometrically independent
/// (equivalently, the piece matrix is invertible).
bool restriction_injective(const PLMap& f, int top_id);

/// Image of an injective piece: the simplex spanned by the image vertices.
/// Throws on a non-injective piece.
Simplex image_simplex(const PLMap& f, int top_id);

/// Sound upper bound on sup |g(g(x)) - h(x)| over the cube:
/// max over grid points + (L_gg + L_h) * grid_step, where L_gg bounds the
/// Lipschitz constant of the composition g o g and L_h bounds h's.
Rat certified_composition_distance(const Evaluable& g, const Evaluable& h,
                                   const Rat& grid_step, const Rat& l_gg, const Rat& l_h);

Evaluable as_evaluable(const PLMap& f);

}  // namespace itroots
