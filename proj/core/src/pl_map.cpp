#include "itroots/pl_map.hpp"

#include <memory>
#include <stdexcept>

namespace itroots {

PLMap interpolate(SimplicialComplex k, std::vector<Point> images, SelfMapCheck check) {
  if (images.size() != k.vertices.size()) {
    throw std::invalid_argument("interpolate: one image per vertex required");
  }
  for (const auto& y : images) {
    if (y.dim() != k.dim) throw std::invalid_argument("interpolate: image dimension mismatch");
  }
  if (check == SelfMapCheck::Carrier) {
    for (std::size_t j = 0; j < images.size(); ++j) {
      if (locate_top(k, images[j]) < 0) {
        throw std::invalid_argument("interpolate: image of vertex " + std::to_string(j) +
                                    " leaves the carrier");
      }
    }
  }
  return PLMap{std::move(k), std::move(images)};
}

Point evaluate(const PLMap& f, const Point& x) {
  int top = locate_top(f.complex, x);
  const std::vector<int>* tuple = nullptr;
  if (top >= 0) {
    tuple = &f.complex.simplices[top];
  } else {
    int id = locate(f.complex, x);  // throws when outside; handles non-pure carriers
    tuple = &f.complex.simplices[id];
  }
  Simplex s = f.complex.geometric_of(*tuple);
  auto alpha = barycentric_coordinates(s, x);
  if (!alpha) throw std::logic_error("evaluate: located simplex does not contain x");
  Point out(std::vector<Rat>(f.dim(), Rat(0)));
  for (std::size_t i = 0; i < tuple->size(); ++i) {
    out = out + (*alpha)[i] * f.images[(*tuple)[i]];
  }
  return out;
}

Rat sup_distance_vertices(const PLMap& f, const PLMap& g) {
  if (!(f.complex == g.complex)) {
    throw std::invalid_argument("sup_distance_vertices: maps live on different complexes");
  }
  Rat d(0);
  for (std::size_t v = 0; v < f.images.size(); ++v) {
    d = rat_max(d, inf_dist(f.images[v], g.images[v]));
  }
  return d;
}

Rat sup_distance_to_function(const PLMap& f, const Evaluable& h, const Modulus& omega) {
  Rat vertex_err(0);
  for (std::size_t v = 0; v < f.images.size(); ++v) {
    vertex_err = rat_max(vertex_err, inf_dist(f.images[v], h(f.complex.vertices[v])));
  }
  return vertex_err + 2 * omega(mesh(f.complex));
}

Point AffinePiece::apply(const Point& x) const {
  Point out = offset;
  for (std::size_t r = 0; r < matrix.size(); ++r) {
    for (std::size_t c = 0; c < matrix[r].size(); ++c) {
      out.coords[r] += matrix[r][c] * x.coords[c];
    }
  }
  return out;
}

Rat AffinePiece::inf_operator_norm() const {
  Rat norm(0);
  for (const auto& row : matrix) {
    Rat s(0);
    for (const auto& c : row) s += rat_abs(c);
    norm = rat_max(norm, s);
  }
  return norm;
}

Rat AffinePiece::determinant() const {
  auto mat = matrix;
  const int m = static_cast<int>(mat.size());
  Rat det(1);
  for (int col = 0; col < m; ++col) {
    int pivot = -1;
    for (int r = col; r < m; ++r) {
      if (mat[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return Rat(0);
    if (pivot != col) {
      std::swap(mat[pivot], mat[col]);
      det = -det;
    }
    det *= mat[col][col];
    for (int r = col + 1; r < m; ++r) {
      if (mat[r][col] == 0) continue;
      Rat factor = mat[r][col] / mat[col][col];
      for (int j = col; j < m; ++j) mat[r][j] -= factor * mat[col][j];
    }
  }
  return det;
}

AffinePiece affine_piece(const PLMap& f, int top_id) {
  const auto& tuple = f.complex.simplices.at(top_id);
  const int m = f.dim();
  if (static_cast<int>(tuple.size()) != m + 1) {
    throw std::invalid_argument("affine_piece: not a full-dimensional simplex");
  }
  // Per output coordinate solve [x_i^T 1] * (row, b) = y_i[row].
  AffinePiece piece;
  piece.matrix.assign(m, std::vector<Rat>(m, Rat(0)));
  piece.offset = Point(std::vector<Rat>(m, Rat(0)));
  for (int row = 0; row < m; ++row) {
    std::vector<std::vector<Rat>> a(m + 1, std::vector<Rat>(m + 1, Rat(0)));
    std::vector<Rat> b(m + 1, Rat(0));
    for (int i = 0; i <= m; ++i) {
      const Point& x = f.complex.vertices[tuple[i]];
      for (int c = 0; c < m; ++c) a[i][c] = x.coords[c];
      a[i][m] = 1;
      b[i] = f.images[tuple[i]].coords[row];
    }
    auto sol = solve_linear(std::move(a), std::move(b));
    if (!sol) throw std::logic_error("affine_piece: vertex equations are inconsistent");
    for (int c = 0; c < m; ++c) piece.matrix[row][c] = (*sol)[c];
    piece.offset.coords[row] = (*sol)[m];
  }
  return piece;
}

bool restriction_injective(const PLMap& f, int top_id) {
  const auto& tuple = f.complex.simplices.at(top_id);
  std::vector<Point> imgs;
  imgs.reserve(tuple.size());
  for (int v : tuple) imgs.push_back(f.images[v]);
  return is_geometrically_independent(imgs);
}

Simplex image_simplex(const PLMap& f, int top_id) {
  if (!restriction_injective(f, top_id)) {
    throw std::invalid_argument("image_simplex: piece is not injective");
  }
  const auto& tuple = f.complex.simplices.at(top_id);
  std::vector<Point> imgs;
  imgs.reserve(tuple.size());
  for (int v : tuple) imgs.push_back(f.images[v]);
  return Simplex(std::move(imgs));
}

Rat lipschitz_constant(const PLMap& f) {
  Rat l(0);
  for (int id : f.complex.top_ids) {
    l = rat_max(l, affine_piece(f, id).inf_operator_norm());
  }
  return l;
}

Rat certified_composition_distance(const Evaluable& g, const Evaluable& h,
                                   const Rat& grid_step, const Rat& l_gg, const Rat& l_h) {
  if (grid_step <= 0) throw std::invalid_argument("certified_composition_distance: bad step");
  const int m = g.arity;
  // Grid covering [0,1]^m with spacing grid_step (last point clamped to 1),
  // so every point of the cube is within grid_step of a grid point.
  long n = 1;
  {
    Rat inv = 1 / grid_step;
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), inv.get_num().get_mpz_t(), inv.get_den().get_mpz_t());
    n = q.get_si();
  }
  std::vector<long> idx(m, 0);
  Rat grid_max(0);
  for (;;) {
    Point x(std::vector<Rat>(m, Rat(0)));
    for (int c = 0; c < m; ++c) {
      Rat v = idx[c] * grid_step;
      x.coords[c] = v > 1 ? Rat(1) : v;
    }
    grid_max = rat_max(grid_max, inf_dist(g(g(x)), h(x)));
    int c = m - 1;
    while (c >= 0 && idx[c] == n) idx[c--] = 0;
    if (c < 0) break;
    ++idx[c];
  }
  return grid_max + (l_gg + l_h) * grid_step;
}

Evaluable as_evaluable(const PLMap& f) {
  auto shared = std::make_shared<PLMap>(f);
  return Evaluable{f.dim(), [shared](const Point& x) { return evaluate(*shared, x); }};
}

}  // namespace itroots
