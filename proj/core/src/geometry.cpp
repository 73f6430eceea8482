#include "itroots/geometry.hpp"

#include <stdexcept>

namespace itroots {

namespace {

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("point dimension mismatch");
}

}  // namespace

Point operator+(const Point& a, const Point& b) {
  require_same_dim(a, b);
  Point out = a;
  for (int i = 0; i < a.dim(); ++i) out.coords[i] += b.coords[i];
  return out;
}

Point operator-(const Point& a, const Point& b) {
  require_same_dim(a, b);
  Point out = a;
  for (int i = 0; i < a.dim(); ++i) out.coords[i] -= b.coords[i];
  return out;
}

Point operator*(const Rat& s, const Point& a) {
  Point out = a;
  for (auto& c : out.coords) c *= s;
  return out;
}

bool lex_less(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  for (int i = 0; i < a.dim(); ++i) {
    int c = cmp(a.coords[i], b.coords[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

Rat inf_norm(const Point& a) {
  Rat m(0);
  for (const auto& c : a.coords) m = rat_max(m, rat_abs(c));
  return m;
}

Rat inf_dist(const Point& a, const Point& b) { return inf_norm(a - b); }

Point make_point(std::initializer_list<long> ints) {
  std::vector<Rat> c;
  c.reserve(ints.size());
  for (long v : ints) c.emplace_back(v);
  return Point(std::move(c));
}

Point make_point_rat(std::initializer_list<Rat> rats) { return Point(std::vector<Rat>(rats)); }

int rational_rank(std::vector<std::vector<Rat>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int rank = 0;
  std::size_t col = 0;
  for (std::size_t r = 0; r < rows.size() && col < cols; ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      Rat factor = rows[i][col] / rows[r][col];
      for (std::size_t j = col; j < cols; ++j) rows[i][j] -= factor * rows[r][j];
    }
    ++rank;
    ++r;
  }
  return rank;
}

std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> a,
                                             std::vector<Rat> b) {
  const std::size_t nrows = a.size();
  if (b.size() != nrows) throw std::invalid_argument("solve_linear: shape mismatch");
  const std::size_t ncols = nrows == 0 ? 0 : a.front().size();

  std::vector<int> pivot_col_of_row;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < nrows; ++col) {
    std::size_t pivot = r;
    while (pivot < nrows && a[pivot][col] == 0) ++pivot;
    if (pivot == nrows) continue;
    std::swap(a[r], a[pivot]);
    std::swap(b[r], b[pivot]);
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r || a[i][col] == 0) continue;
      Rat factor = a[i][col] / a[r][col];
      for (std::size_t j = col; j < ncols; ++j) a[i][j] -= factor * a[r][j];
      b[i] -= factor * b[r];
    }
    pivot_col_of_row.push_back(static_cast<int>(col));
    ++r;
  }
  for (std::size_t i = r; i < nrows; ++i) {
    if (b[i] != 0) return std::nullopt;  // inconsistent
  }
  std::vector<Rat> x(ncols, Rat(0));
  for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i) {
    int col = pivot_col_of_row[i];
    x[col] = b[i] / a[i][col];
  }
  return x;
}

bool is_geometrically_independent(std::span<const Point> points) {
  if (points.empty()) return true;
  const int m = points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != m) throw std::invalid_argument("is_geometrically_independent: dim mismatch");
  }
  if (points.size() == 1) return true;
  if (static_cast<int>(points.size()) > m + 1) return false;
  std::vector<std::vector<Rat>> rows;
  rows.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    rows.push_back((points[i] - points[0]).coords);
  }
  return rational_rank(std::move(rows)) == static_cast<int>(points.size()) - 1;
}

bool is_affinely_independent_of(const Point& z, std::span<const Point> points) {
  if (points.empty()) return true;
  // z in Aff(points) iff z - p0 is a combination of the difference vectors
  // iff appending it does not raise the rank.
  std::vector<std::vector<Rat>> rows;
  for (std::size_t i = 1; i < points.size(); ++i) rows.push_back((points[i] - points[0]).coords);
  int base = rational_rank(rows);
  rows.push_back((z - points[0]).coords);
  return rational_rank(std::move(rows)) > base;
}

Simplex::Simplex(std::vector<Point> verts) : vertices(std::move(verts)) {
  if (vertices.empty()) throw std::invalid_argument("Simplex: needs at least one vertex");
  if (!is_geometrically_independent(vertices)) {
    throw std::invalid_argument("Simplex: vertices are not geometrically independent");
  }
}

Point Simplex::barycentre() const {
  Point sum = vertices.front();
  for (std::size_t i = 1; i < vertices.size(); ++i) sum = sum + vertices[i];
  return Rat(1, static_cast<unsigned long>(vertices.size())) * sum;
}

Rat Simplex::diameter_inf() const {
  Rat d(0);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      d = rat_max(d, inf_dist(vertices[i], vertices[j]));
    }
  }
  return d;
}

std::optional<std::vector<Rat>> barycentric_coordinates(const Simplex& s, const Point& x) {
  const int m = s.ambient_dim();
  if (x.dim() != m) throw std::invalid_argument("barycentric_coordinates: dim mismatch");
  const std::size_t k1 = s.vertices.size();
  // Rows: one per ambient coordinate (sum alpha_i v_i = x) plus sum alpha = 1.
  std::vector<std::vector<Rat>> a(m + 1, std::vector<Rat>(k1, Rat(0)));
  std::vector<Rat> b(m + 1, Rat(0));
  for (int row = 0; row < m; ++row) {
    for (std::size_t i = 0; i < k1; ++i) a[row][i] = s.vertices[i].coords[row];
    b[row] = x.coords[row];
  }
  for (std::size_t i = 0; i < k1; ++i) a[m][i] = 1;
  b[m] = 1;
  return solve_linear(std::move(a), std::move(b));
}

bool simplex_contains(const Simplex& s, const Point& x) {
  auto alpha = barycentric_coordinates(s, x);
  if (!alpha) return false;
  for (const auto& a : *alpha) {
    if (a < 0) return false;
  }
  return true;
}

bool open_simplex_contains(const Simplex& s, const Point& x) {
  auto alpha = barycentric_coordinates(s, x);
  if (!alpha) return false;
  for (const auto& a : *alpha) {
    if (a <= 0) return false;
  }
  return true;
}

Rat simplex_volume(const Simplex& s) {
  const int m = s.ambient_dim();
  if (s.dim() != m) throw std::invalid_argument("simplex_volume: simplex is not full-dimensional");
  std::vector<std::vector<Rat>> mat;
  for (int i = 1; i <= m; ++i) mat.push_back((s.vertices[i] - s.vertices[0]).coords);
  // Determinant by fraction-free-ish Gaussian elimination.
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
  det = rat_abs(det);
  Rat fact(1);
  for (int i = 2; i <= m; ++i) fact *= i;
  return det / fact;
}

}  // namespace itroots
