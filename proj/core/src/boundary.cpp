#include <algorithm>
#include <stdexcept>

#include "itroots/constructions.hpp"

namespace itroots {

namespace {

std::vector<bool> corner_flips(const Point& x0) {
  std::vector<bool> flips(x0.dim());
  for (int i = 0; i < x0.dim(); ++i) {
    if (x0.coords[i] == 0) {
      flips[i] = false;
    } else if (x0.coords[i] == 1) {
      flips[i] = true;
    } else {
      throw std::invalid_argument(
          "boundary_square_approx: x0 must be a corner of the cube (coordinates 0 or 1)");
    }
  }
  return flips;
}

Point reflect(const Point& x, const std::vector<bool>& flips) {
  Point out = x;
  for (std::size_t i = 0; i < flips.size(); ++i) {
    if (flips[i]) out.coords[i] = 1 - out.coords[i];
  }
  return out;
}

// Rebuilds a complex with reflected vertices; the grid index is recomputed
// from barycentres so point location stays fast.
SimplicialComplex reflect_complex(const SimplicialComplex& k, const std::vector<bool>& flips) {
  std::vector<Point> verts;
  verts.reserve(k.vertices.size());
  for (const auto& v : k.vertices) verts.push_back(reflect(v, flips));
  std::vector<std::vector<int>> maximal;
  maximal.reserve(k.maximal_ids.size());
  for (int id : k.maximal_ids) maximal.push_back(k.simplices[id]);
  SimplicialComplex out = SimplicialComplex::from_maximal(k.dim, std::move(verts),
                                                          std::move(maximal));
  if (k.grid) {
    GridIndex gi;
    gi.r = k.grid->r;
    gi.cell_tops.resize(k.grid->cell_tops.size());
    for (int id : out.top_ids) {
      Point b = out.geometric(id).barycentre();
      long cell = 0;
      for (int c = 0; c < out.dim; ++c) cell = cell * gi.r + grid_cell_coord(b.coords[c], gi.r);
      gi.cell_tops[static_cast<std::size_t>(cell)].push_back(id);
    }
    out.grid = std::move(gi);
  }
  return out;
}

PLMap reflect_pl_map(const PLMap& f, const std::vector<bool>& flips) {
  SimplicialComplex k = reflect_complex(f.complex, flips);
  std::vector<Point> images;
  images.reserve(f.images.size());
  for (const auto& y : f.images) images.push_back(reflect(y, flips));
  return interpolate(std::move(k), std::move(images), SelfMapCheck::None);
}

// Grid triangulation of the square whose origin cell is split along the
// anti-diagonal, making the corner simplex <O, e1/r, e2/r> a piece.
SimplicialComplex corner_grid_2d(int r) {
  const long va = r + 1;
  std::vector<Point> verts(static_cast<std::size_t>(va * va));
  for (long i = 0; i <= r; ++i) {
    for (long j = 0; j <= r; ++j) {
      verts[static_cast<std::size_t>(i * va + j)] =
          Point({Rat(i, r), Rat(j, r)});
    }
  }
  for (auto& p : verts) {
    for (auto& c : p.coords) c.canonicalize();
  }
  auto vid = [va](long i, long j) { return static_cast<int>(i * va + j); };

  std::vector<std::vector<int>> maximal;
  std::vector<std::vector<std::vector<int>>> per_cell(static_cast<std::size_t>(r) *
                                                      static_cast<std::size_t>(r));
  for (long i = 0; i < r; ++i) {
    for (long j = 0; j < r; ++j) {
      std::vector<std::vector<int>> tris;
      if (i == 0 && j == 0) {
        tris.push_back({vid(0, 0), vid(1, 0), vid(0, 1)});
        tris.push_back({vid(1, 0), vid(0, 1), vid(1, 1)});
      } else {
        tris.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
        tris.push_back({vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)});
      }
      for (auto& t : tris) {
        maximal.push_back(t);
        per_cell[static_cast<std::size_t>(i * r + j)].push_back(std::move(t));
      }
    }
  }
  SimplicialComplex k = SimplicialComplex::from_maximal(2, std::move(verts), maximal);
  GridIndex gi;
  gi.r = r;
  gi.cell_tops.resize(per_cell.size());
  for (std::size_t c = 0; c < per_cell.size(); ++c) {
    for (auto& t : per_cell[c]) gi.cell_tops[c].push_back(k.simplex_id(t));
  }
  k.grid = std::move(gi);
  return k;
}

// The exact PL involution swapping the corner simplex with the rest of the
// square: both regions are cones over their boundaries, matched piecewise.
PLMap corner_involution_2d(int r) {
  const Rat inv_r(1, r);
  Point o({Rat(0), Rat(0)});
  Point a({inv_r, Rat(0)});
  Point b({Rat(0), inv_r});
  Point m1({Rat(1, 2 * static_cast<long>(r)), Rat(0)});
  Point m2({Rat(0), Rat(1, 2 * static_cast<long>(r))});
  Point p({Rat(1, 3 * static_cast<long>(r)), Rat(1, 3 * static_cast<long>(r))});
  Point q({Rat(1, 2), Rat(1, 2)});
  Point c1({Rat(1), Rat(0)});
  Point c2({Rat(1), Rat(1)});
  Point c3({Rat(0), Rat(1)});

  std::vector<Point> verts = {o, a, b, m1, m2, p, q, c1, c2, c3};
  enum { O = 0, A = 1, B = 2, M1 = 3, M2 = 4, P = 5, Q = 6, C1 = 7, C2 = 8, C3 = 9 };
  std::vector<std::vector<int>> maximal = {
      {P, A, M1}, {P, M1, O}, {P, O, M2}, {P, M2, B}, {P, B, A},
      {Q, A, C1}, {Q, C1, C2}, {Q, C2, C3}, {Q, C3, B}, {Q, B, A},
  };
  SimplicialComplex k = SimplicialComplex::from_maximal(2, std::move(verts), std::move(maximal));

  std::vector<Point> images(10);
  images[O] = c2;
  images[A] = a;
  images[B] = b;
  images[M1] = c1;
  images[M2] = c3;
  images[P] = q;
  images[Q] = p;
  images[C1] = m1;
  images[C2] = o;
  images[C3] = m2;
  return interpolate(std::move(k), std::move(images), SelfMapCheck::None);
}

PLMap interval_involution(int r) {
  std::vector<Point> verts = {Point({Rat(0)}), Point({Rat(1, r)}), Point({Rat(1)})};
  std::vector<std::vector<int>> maximal = {{0, 1}, {1, 2}};
  SimplicialComplex k = SimplicialComplex::from_maximal(1, std::move(verts), std::move(maximal));
  std::vector<Point> images = {Point({Rat(1)}), Point({Rat(1, r)}), Point({Rat(0)})};
  return interpolate(std::move(k), std::move(images), SelfMapCheck::None);
}

// phi o phi = id, proven piece by piece by exact matrix composition.
void assert_involution(const PLMap& phi) {
  for (int id : phi.complex.top_ids) {
    const auto& tuple = phi.complex.simplices[id];
    std::vector<int> image_tuple;
    for (int v : tuple) {
      int match = -1;
      for (std::size_t u = 0; u < phi.complex.vertices.size(); ++u) {
        if (phi.complex.vertices[u] == phi.images[v]) {
          match = static_cast<int>(u);
          break;
        }
      }
      if (match < 0) throw std::logic_error("involution: image vertex is not a vertex");
      image_tuple.push_back(match);
    }
    int image_id = phi.complex.simplex_id(image_tuple);
    if (image_id < 0 || static_cast<int>(phi.complex.simplices[image_id].size()) !=
                            phi.complex.dim + 1) {
      throw std::logic_error("involution: piece image is not a piece");
    }
    AffinePiece fwd = affine_piece(phi, id);
    AffinePiece back = affine_piece(phi, image_id);
    const int m = phi.complex.dim;
    for (int i = 0; i < m; ++i) {
      Rat off = back.offset.coords[i];
      for (int j = 0; j < m; ++j) off += back.matrix[i][j] * fwd.offset.coords[j];
      if (off != 0) throw std::logic_error("involution: composition offset nonzero");
      for (int j = 0; j < m; ++j) {
        Rat entry(0);
        for (int l = 0; l < m; ++l) entry += back.matrix[i][l] * fwd.matrix[l][j];
        if (entry != (i == j ? Rat(1) : Rat(0))) {
          throw std::logic_error("involution: composition is not the identity");
        }
      }
    }
  }
}

}  // namespace

SquareApproxResult boundary_square_approx(const Evaluable& h, const Modulus& omega,
                                          const Point& x0, const Rat& eps,
                                          const BoundaryOptions& opts) {
  const int m = x0.dim();
  if (m < 1 || m > 2) throw std::invalid_argument("boundary_square_approx: m must be 1 or 2");
  if (eps <= 0) throw std::invalid_argument("boundary_square_approx: eps must be positive");
  const std::vector<bool> flips = corner_flips(x0);
  if (!(h(x0) == x0)) {
    throw std::invalid_argument("boundary_square_approx: x0 is not an exact fixed point of h");
  }

  bool reflected = false;
  for (bool f : flips) reflected = reflected || f;
  Evaluable hh = h;
  if (reflected) {
    hh = Evaluable{m, [h, flips](const Point& x) { return reflect(h(reflect(x, flips)), flips); }};
  }

  // Modulus-driven scale: omega(delta) < eps/4 and delta < eps/4.
  Rat delta = eps / 4;
  if (omega.lip > 0) delta = rat_min(delta, eps / (4 * omega.lip));
  delta /= 2;
  int r;
  {
    Rat need = 4 / delta;
    mpz_class qz;
    mpz_fdiv_q(qz.get_mpz_t(), need.get_num().get_mpz_t(), need.get_den().get_mpz_t());
    r = static_cast<int>(qz.get_si()) + 1;
    if (r < 2) r = 2;
  }

  SimplicialComplex grid = m == 1 ? kuhn_triangulation(1, r) : corner_grid_2d(r);
  PLMap phi = m == 1 ? interval_involution(r) : corner_involution_2d(r);
  assert_involution(phi);

  // sigma0 = the corner simplex at the (reflected) origin.
  std::vector<int> sigma0;
  {
    std::vector<Point> sigma0_pts;
    if (m == 1) {
      sigma0_pts = {Point({Rat(0)}), Point({Rat(1, r)})};
    } else {
      sigma0_pts = {Point({Rat(0), Rat(0)}), Point({Rat(1, r), Rat(0)}),
                    Point({Rat(0), Rat(1, r)})};
    }
    for (const auto& pt : sigma0_pts) {
      int found = -1;
      for (std::size_t v = 0; v < grid.vertices.size() && found < 0; ++v) {
        if (grid.vertices[v] == pt) found = static_cast<int>(v);
      }
      if (found < 0) throw std::logic_error("boundary_square_approx: corner vertex missing");
      sigma0.push_back(found);
    }
    std::sort(sigma0.begin(), sigma0.end());
  }
  Simplex sigma0_geom = grid.geometric_of(sigma0);
  // Interface between the corner simplex and its complement: coordinate sum
  // equal to 1/r.
  const Rat interface_sum(1, r);

  // f1 per the three-case vertex rule; images that land on the corner
  // simplex but off the interface are pulled to the vertex u1.
  const Point u1 = m == 1 ? Point({Rat(1, r)}) : Point({Rat(1, r), Rat(0)});
  std::vector<Point> f1_images(grid.vertices.size());
  for (std::size_t j = 0; j < grid.vertices.size(); ++j) {
    const Point& x = grid.vertices[j];
    if (std::binary_search(sigma0.begin(), sigma0.end(), static_cast<int>(j))) {
      f1_images[j] = x;
      continue;
    }
    Point y = hh(x);
    for (int cc = 0; cc < m; ++cc) {
      if (y.coords[cc] < 0 || y.coords[cc] > 1) {
        throw std::invalid_argument("boundary_square_approx: h is not a self-map at a vertex");
      }
    }
    Rat coord_sum(0);
    for (const auto& cc : y.coords) coord_sum += cc;
    const bool in_sigma0 = simplex_contains(sigma0_geom, y);
    const bool on_interface = coord_sum == interface_sum;
    f1_images[j] = (in_sigma0 && !on_interface) ? u1 : y;
  }
  PLMap f1 = interpolate(std::move(grid), std::move(f1_images), SelfMapCheck::None);

  // The complement region is convex and f1 maps it into itself; this is what
  // makes the composition bound on the corner side legitimate.
  for (int id : f1.complex.top_ids) {
    const auto& tuple = f1.complex.simplices[id];
    bool comp_piece = false;
    for (int v : tuple) {
      Rat s(0);
      for (const auto& cc : f1.complex.vertices[v].coords) s += cc;
      if (s > interface_sum) comp_piece = true;
    }
    if (!comp_piece) continue;
    for (int v : tuple) {
      Rat s(0);
      for (const auto& cc : f1.images[v].coords) s += cc;
      if (s < interface_sum) {
        throw std::logic_error("boundary_square_approx: f1 leaves the complement region");
      }
    }
  }

  // Lipschitz data: on the corner side g o g = phi o f1 o phi with the three
  // factors passing through sigma0 -> complement -> complement.
  Rat l_f1 = lipschitz_constant(f1);
  Rat l_phi_corner(0), l_phi_comp(0);
  for (int id : phi.complex.top_ids) {
    Simplex s = phi.complex.geometric(id);
    bool corner_side = true;
    for (const auto& v : s.vertices) {
      Rat sum(0);
      for (const auto& cc : v.coords) sum += cc;
      if (sum > interface_sum) corner_side = false;
    }
    Rat norm = affine_piece(phi, id).inf_operator_norm();
    if (corner_side) {
      l_phi_corner = rat_max(l_phi_corner, norm);
    } else {
      l_phi_comp = rat_max(l_phi_comp, norm);
    }
  }
  Rat l_gg = rat_max(l_f1, l_phi_comp * l_f1 * l_phi_corner);

  SquareApproxResult res;
  res.f1 = std::move(f1);
  res.phi = std::move(phi);
  res.sigma0 = sigma0;
  res.sigma0_geometric = sigma0_geom;
  res.l_gg = l_gg;
  res.grid_step = opts.grid_step ? *opts.grid_step : (m == 1 ? Rat(1, 1024) : Rat(1, 256));
  res.log.push_back("grid resolution " + std::to_string(r));
  res.log.push_back("involution: exact PL cone construction, verified piecewise");

  Rat bound = certified_composition_distance(res.g(), hh, res.grid_step, l_gg, omega.lip);
  res.certified_bound = bound;

  if (reflected) {
    PLMap f1_r = reflect_pl_map(res.f1, flips);
    PLMap phi_r = reflect_pl_map(res.phi, flips);
    std::vector<int> sigma0_r;
    for (const auto& pt : res.sigma0_geometric.vertices) {
      Point rp = reflect(pt, flips);
      int found = -1;
      for (std::size_t v = 0; v < f1_r.complex.vertices.size() && found < 0; ++v) {
        if (f1_r.complex.vertices[v] == rp) found = static_cast<int>(v);
      }
      if (found < 0) throw std::logic_error("boundary_square_approx: reflected vertex missing");
      sigma0_r.push_back(found);
    }
    std::sort(sigma0_r.begin(), sigma0_r.end());
    std::vector<Point> pts;
    for (int v : sigma0_r) pts.push_back(f1_r.complex.vertices[v]);
    res.f1 = std::move(f1_r);
    res.phi = std::move(phi_r);
    res.sigma0 = std::move(sigma0_r);
    res.sigma0_geometric = Simplex(pts);
    res.log.push_back("constructed at the reflected origin corner");
  }

  if (!(res.certified_bound < eps)) {
    throw std::runtime_error("boundary_square_approx: certification failed; achieved bound " +
                             rat_to_string(res.certified_bound) + " at grid step " +
                             rat_to_string(res.grid_step));
  }
  return res;
}

}  // namespace itroots
