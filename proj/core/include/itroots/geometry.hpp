#pragma once

#include <optional>
#include <span>
#include <vector>

#include "itroots/rational.hpp"

namespace itroots {

/// A point of Q^m. All operations are exact; nothing in the geometry layer
/// ever rounds.
struct Point {
  std::vector<Rat> coords;

  Point() = default;
  explicit Point(std::vector<Rat> c) : coords(std::move(c)) {}

  int dim() const { return static_cast<int>(coords.size()); }
  const Rat& operator[](int i) const { return coords[i]; }
  Rat& operator[](int i) { return coords[i]; }
  bool operator==(const Point&) const = default;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Rat& s, const Point& a);

/// Strict lexicographic order; used for deterministic dedup tables.
bool lex_less(const Point& a, const Point& b);

Rat inf_norm(const Point& a);
Rat inf_dist(const Point& a, const Point& b);

Point make_point(std::initializer_list<long> ints);
Point make_point_rat(std::initializer_list<Rat> rats);

/// Exact rank of the difference vectors {p_1 - p_0, ...}: the points span a
/// simplex iff the rank equals size - 1. A singleton is independent.
bool is_geometrically_independent(std::span<const Point> points);

/// z lies outside the affine hull of `points`.
bool is_affinely_independent_of(const Point& z, std::span<const Point> points);

/// Geometric k-simplex: ordered vertex list, 0 <= k <= ambient dimension.
/// Construction validates geometric independence exactly.
struct Simplex {
  std::vector<Point> vertices;

  Simplex() = default;
  explicit Simplex(std::vector<Point> verts);

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  int ambient_dim() const { return vertices.empty() ? 0 : vertices.front().dim(); }

  Point barycentre() const;
  /// Max pairwise vertex distance in the sup norm; equals the diameter
  /// because the simplex is the convex hull of its vertices.
  Rat diameter_inf() const;
  bool operator==(const Simplex&) const = default;
};

/// Barycentric coordinates of x with respect to the simplex. Present iff x
/// lies on the affine hull; membership in the simplex holds iff all
/// coordinates are >= 0, interior membership iff all are > 0.
std::optional<std::vector<Rat>> barycentric_coordinates(const Simplex& s, const Point& x);

bool simplex_contains(const Simplex& s, const Point& x);
bool open_simplex_contains(const Simplex& s, const Point& x);

/// Volume of a full-dimensional simplex: |det| / m!. Throws if dim != ambient.
Rat simplex_volume(const Simplex& s);

/// Gaussian elimination rank of a rational matrix (rows of equal length).
int rational_rank(std::vector<std::vector<Rat>> rows);

/// Solves A x = b exactly. Empty optional when inconsistent; for
/// underdetermined systems free variables are set to zero.
std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> a,
                                             std::vector<Rat> b);

}  // namespace itroots
