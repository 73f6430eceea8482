#include <algorithm>
#include <stdexcept>

#include "itroots/constructions.hpp"

namespace itroots {

namespace {

bool on_grid(const Rat& x, int r) {
  Rat scaled = x * r;
  return scaled.get_den() == 1;
}

long grid_int(const Rat& x, int r) {
  Rat scaled = x * r;
  return scaled.get_num().get_si();
}

struct CellBox {
  std::vector<long> corner;
  Box box;
};

// Coarse cells covered by the carrier, derived from the top simplices.
std::vector<CellBox> carrier_cells(const PLMap& f, int r) {
  const int m = f.dim();
  std::vector<std::vector<long>> corners;
  for (int id : f.complex.top_ids) {
    const auto& t = f.complex.simplices[id];
    std::vector<long> corner(m);
    for (int c = 0; c < m; ++c) {
      Rat lo = f.complex.vertices[t[0]].coords[c];
      for (int v : t) lo = rat_min(lo, f.complex.vertices[v].coords[c]);
      if (!on_grid(lo, r)) throw std::invalid_argument("extend: K is not aligned to the grid");
      corner[c] = grid_int(lo, r);
    }
    corners.push_back(std::move(corner));
  }
  std::sort(corners.begin(), corners.end());
  corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
  std::vector<CellBox> out;
  for (auto& c : corners) {
    CellBox cb;
    cb.corner = c;
    std::vector<Rat> lo(m), hi(m);
    for (int i = 0; i < m; ++i) {
      lo[i] = Rat(c[i], r);
      hi[i] = Rat(c[i] + 1, r);
      lo[i].canonicalize();
      hi[i].canonicalize();
    }
    cb.box = Box{Point(lo), Point(hi)};
    out.push_back(std::move(cb));
  }
  return out;
}

bool in_cells(const std::vector<CellBox>& cells, const Point& w) {
  for (const auto& c : cells) {
    if (c.box.contains(w)) return true;
  }
  return false;
}

// Multi-source Chebyshev BFS: every free vertex copies the value of its
// nearest assigned vertex, ties resolved toward the smallest vertex id
// (vertex ids are lexicographic in the grid coordinates).
std::vector<int> nearest_assigned_labels(int m, int r, const std::vector<char>& assigned) {
  const long va = r + 1;
  long n = 1;
  for (int i = 0; i < m; ++i) n *= va;

  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<long> frontier;
  for (long v = 0; v < n; ++v) {
    if (assigned[static_cast<std::size_t>(v)]) {
      label[static_cast<std::size_t>(v)] = static_cast<int>(v);
      frontier.push_back(v);
    }
  }
  if (frontier.empty()) throw std::logic_error("nearest_assigned_labels: no sources");

  auto coords_of = [&](long v) {
    std::vector<long> c(m);
    for (int i = m - 1; i >= 0; --i) {
      c[i] = v % va;
      v /= va;
    }
    return c;
  };

  while (!frontier.empty()) {
    std::vector<long> next;
    std::vector<std::pair<long, int>> updates;  // vertex -> candidate label
    for (long v : frontier) {
      auto cv = coords_of(v);
      // Chebyshev neighborhood: all +-1 offsets per axis.
      std::vector<long> off(m, -1);
      for (;;) {
        long u = 0;
        bool valid = true, all_zero = true;
        for (int i = 0; i < m && valid; ++i) {
          long ci = cv[i] + off[i];
          if (off[i] != 0) all_zero = false;
          if (ci < 0 || ci >= va) valid = false;
          u = u * va + ci;
        }
        if (valid && !all_zero && label[static_cast<std::size_t>(u)] < 0) {
          updates.emplace_back(u, label[static_cast<std::size_t>(v)]);
        }
        int i = m - 1;
        while (i >= 0 && off[i] == 1) off[i--] = -1;
        if (i < 0) break;
        ++off[i];
      }
    }
    std::sort(updates.begin(), updates.end());
    for (auto& [u, lab] : updates) {
      if (label[static_cast<std::size_t>(u)] < 0) {
        label[static_cast<std::size_t>(u)] = lab;
        next.push_back(u);
      } else {
        label[static_cast<std::size_t>(u)] =
            std::min(label[static_cast<std::size_t>(u)], lab);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
  }
  return label;
}

}  // namespace

SimplicialComplex kuhn_cells_subcomplex(int m, int r,
                                        const std::vector<std::vector<long>>& cells) {
  const long va = r + 1;
  auto vertex_global = [&](const std::vector<long>& iv) {
    long id = 0;
    for (int k = 0; k < m; ++k) id = id * va + iv[k];
    return id;
  };

  std::vector<std::vector<std::vector<long>>> tuples;  // per cell, per simplex, vertex coords
  std::vector<long> used;
  for (const auto& cell : cells) {
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i;
    std::vector<std::vector<long>> cell_tuples;
    do {
      std::vector<std::vector<long>> chain;
      std::vector<long> iv(cell);
      chain.push_back(iv);
      for (int step = 0; step < m; ++step) {
        ++iv[perm[step]];
        chain.push_back(iv);
      }
      std::vector<long> tuple;
      for (auto& c : chain) {
        long gid = vertex_global(c);
        tuple.push_back(gid);
        used.push_back(gid);
      }
      cell_tuples.push_back(std::move(tuple));
    } while (std::next_permutation(perm.begin(), perm.end()));
    tuples.push_back(std::move(cell_tuples));
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());

  std::vector<Point> verts;
  verts.reserve(used.size());
  for (long gid : used) {
    std::vector<Rat> coords(m);
    long v = gid;
    for (int i = m - 1; i >= 0; --i) {
      coords[i] = Rat(v % va, r);
      coords[i].canonicalize();
      v /= va;
    }
    verts.push_back(Point(std::move(coords)));
  }
  auto dense_id = [&used](long gid) {
    return static_cast<int>(std::lower_bound(used.begin(), used.end(), gid) - used.begin());
  };
  std::vector<std::vector<int>> maximal;
  for (auto& cell_tuples : tuples) {
    for (auto& t : cell_tuples) {
      std::vector<int> tuple;
      for (long gid : t) tuple.push_back(dense_id(gid));
      maximal.push_back(std::move(tuple));
    }
  }
  return SimplicialComplex::from_maximal(m, std::move(verts), std::move(maximal));
}

ExtendResult extend_to_square(const PLMap& f_on_k, const Box& b, int coarse_r) {
  const int m = f_on_k.dim();
  if (m < 1 || m > 2) throw std::invalid_argument("extend_to_square: m must be 1 or 2");
  if (coarse_r < 1) throw std::invalid_argument("extend_to_square: bad resolution");

  for (const auto& v : f_on_k.complex.vertices) {
    for (const auto& c : v.coords) {
      if (!on_grid(c, coarse_r)) {
        throw std::invalid_argument("extend_to_square: K vertex off the coarse grid");
      }
    }
  }
  for (int c = 0; c < m; ++c) {
    if (!on_grid(b.lo.coords[c], coarse_r) || !on_grid(b.hi.coords[c], coarse_r)) {
      throw std::invalid_argument("extend_to_square: B is not grid aligned");
    }
    if (b.lo.coords[c] < 0 || b.hi.coords[c] > 1 || !(b.lo.coords[c] < b.hi.coords[c])) {
      throw std::invalid_argument("extend_to_square: B is not a box inside the cube");
    }
  }
  for (const auto& y : f_on_k.images) {
    for (const auto& c : y.coords) {
      if (c < 0 || c > 1) throw std::invalid_argument("extend_to_square: f leaves the cube");
    }
  }

  auto cells = carrier_cells(f_on_k, coarse_r);
  for (const auto& cell : cells) {
    bool disjoint = false;
    for (int c = 0; c < m; ++c) {
      if (cell.box.hi.coords[c] < b.lo.coords[c] || b.hi.coords[c] < cell.box.lo.coords[c]) {
        disjoint = true;
      }
    }
    if (!disjoint) throw std::invalid_argument("extend_to_square: B overlaps |K|");
  }

  // Uniform contraction into B keeps fine Kuhn pieces inside images of
  // coarse ones, which is what makes g exactly affine over g~(K)'s pieces.
  Rat scale = b.hi.coords[0] - b.lo.coords[0];
  for (int c = 1; c < m; ++c) scale = rat_min(scale, b.hi.coords[c] - b.lo.coords[c]);
  const Point offset = b.lo;
  auto contract = [&](const Point& x) { return offset + scale * x; };
  auto expand = [&](const Point& x) {
    Point out = x - offset;
    for (auto& c : out.coords) c /= scale;
    return out;
  };

  const int fine_r = coarse_r * coarse_r;
  SimplicialComplex fine = kuhn_triangulation(m, fine_r);

  const std::size_t nv = fine.vertices.size();
  std::vector<char> assigned(nv, 0);
  std::vector<Point> values(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const Point& w = fine.vertices[v];
    if (in_cells(cells, w)) {
      values[v] = contract(w);
      assigned[v] = 1;
      continue;
    }
    Point pre = expand(w);
    bool in_cube = true;
    for (const auto& c : pre.coords) {
      if (c < 0 || c > 1) in_cube = false;
    }
    if (in_cube && in_cells(cells, pre)) {
      values[v] = evaluate(f_on_k, pre);
      assigned[v] = 1;
    }
  }

  auto labels = nearest_assigned_labels(m, fine_r, assigned);
  for (std::size_t v = 0; v < nv; ++v) {
    if (!assigned[v]) values[v] = values[static_cast<std::size_t>(labels[v])];
  }

  ExtendResult res;
  res.coarse_r = coarse_r;
  res.fine_r = fine_r;
  res.scale = scale;
  res.offset = offset;
  res.g = interpolate(std::move(fine), std::move(values), SelfMapCheck::None);
  return res;
}

LpResult lp_denseness_check(const PLMap& f_full, const Rat& eps, int p) {
  const int m = f_full.dim();
  if (m < 1 || m > 2) throw std::invalid_argument("lp_denseness_check: m must be 1 or 2");
  if (p != 1 && p != 2) throw std::invalid_argument("lp_denseness_check: p must be 1 or 2");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("lp_denseness_check: eps in (0,1)");
  if (!f_full.complex.grid) {
    throw std::invalid_argument("lp_denseness_check: f must live on a grid triangulation");
  }
  const int r0 = f_full.complex.grid->r;

  int r = 0;
  for (int k = 1; k <= 64; ++k) {
    Rat a = eps * (k * r0);
    Rat b = eps * (k * r0) / 2;
    if (a.get_den() == 1 && b.get_den() == 1) {
      r = k * r0;
      break;
    }
  }
  if (r == 0) throw std::invalid_argument("lp_denseness_check: eps does not align with the grid");

  // K = the cells of [eps,1]^m.
  const long lo_cell = grid_int(eps, r);
  std::vector<std::vector<long>> cells;
  std::vector<long> cur(m, lo_cell);
  for (;;) {
    cells.push_back(cur);
    int i = m - 1;
    while (i >= 0 && cur[i] == r - 1) cur[i--] = lo_cell;
    if (i < 0) break;
    ++cur[i];
  }
  SimplicialComplex kc = kuhn_cells_subcomplex(m, r, cells);
  std::vector<Point> kvals;
  kvals.reserve(kc.vertices.size());
  for (const auto& v : kc.vertices) kvals.push_back(evaluate(f_full, v));
  PLMap f_k = interpolate(std::move(kc), std::move(kvals), SelfMapCheck::None);

  Box b;
  {
    std::vector<Rat> lo(m, Rat(0)), hi(m, Rat(1));
    hi[0] = eps / 2;
    b = Box{Point(lo), Point(hi)};
  }

  LpResult res;
  res.ext = extend_to_square(f_k, b, r);
  res.quad_r = r;
  res.bound = 1;
  {
    Rat keep = 1 - eps;
    Rat pw(1);
    for (int i = 0; i < m; ++i) pw *= keep;
    res.bound -= pw;
  }

  // Midpoint quadrature on the eps-aligned grid: cells inside K contribute
  // exactly zero because g o g = f there.
  Rat cell_vol(1);
  for (int i = 0; i < m; ++i) cell_vol /= r;
  res.numeric = 0;
  std::vector<long> c(m, 0);
  for (;;) {
    Point mid(std::vector<Rat>(m, Rat(0)));
    for (int i = 0; i < m; ++i) mid.coords[i] = Rat(2 * c[i] + 1, 2L * r);
    for (auto& co : mid.coords) co.canonicalize();
    Point gg = evaluate(res.ext.g, evaluate(res.ext.g, mid));
    Rat d = inf_dist(gg, evaluate(f_full, mid));
    Rat term = d;
    if (p == 2) term *= d;
    res.numeric += cell_vol * term;
    int i = m - 1;
    while (i >= 0 && c[i] == r - 1) c[i--] = 0;
    if (i < 0) break;
    ++c[i];
  }
  return res;
}

}  // namespace itroots
