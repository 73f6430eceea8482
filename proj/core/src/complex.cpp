#include "itroots/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "itroots/linear_feasibility.hpp"

namespace itroots {

namespace {

std::vector<std::vector<int>> nonempty_subsets(const std::vector<int>& tuple) {
  std::vector<std::vector<int>> out;
  const std::size_t n = tuple.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> sub;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) sub.push_back(tuple[i]);
    }
    out.push_back(std::move(sub));
  }
  return out;
}

}  // namespace

SimplicialComplex SimplicialComplex::from_maximal(int dim, std::vector<Point> vertices,
                                                  std::vector<std::vector<int>> maximal) {
  SimplicialComplex k;
  k.dim = dim;
  k.vertices = std::move(vertices);
  for (const auto& p : k.vertices) {
    if (p.dim() != dim) throw std::invalid_argument("from_maximal: vertex dimension mismatch");
  }
  for (auto& t : maximal) {
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end()) {
      throw std::invalid_argument("from_maximal: repeated vertex in simplex");
    }
    for (int v : t) {
      if (v < 0 || v >= static_cast<int>(k.vertices.size())) {
        throw std::invalid_argument("from_maximal: vertex index out of range");
      }
    }
  }
  // Longest first so shorter generators that are faces get absorbed.
  std::stable_sort(maximal.begin(), maximal.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });

  for (auto& gen : maximal) {
    if (k.registry_.count(gen)) continue;  // face of an earlier generator
    for (auto& sub : nonempty_subsets(gen)) {
      auto [it, inserted] = k.registry_.try_emplace(sub, static_cast<int>(k.simplices.size()));
      if (inserted) k.simplices.push_back(it->first);
    }
    k.maximal_ids.push_back(k.registry_.at(gen));
  }
  for (int id = 0; id < static_cast<int>(k.simplices.size()); ++id) {
    if (static_cast<int>(k.simplices[id].size()) == dim + 1) k.top_ids.push_back(id);
  }
  // Geometric sanity: every stored simplex must be spanned by independent
  // vertices; checking maximal generators covers all faces.
  for (int id : k.maximal_ids) k.geometric(id);
  return k;
}

int SimplicialComplex::simplex_id(std::vector<int> tuple) const {
  std::sort(tuple.begin(), tuple.end());
  auto it = registry_.find(tuple);
  return it == registry_.end() ? -1 : it->second;
}

Simplex SimplicialComplex::geometric(int id) const {
  return geometric_of(simplices.at(id));
}

Simplex SimplicialComplex::geometric_of(const std::vector<int>& tuple) const {
  std::vector<Point> pts;
  pts.reserve(tuple.size());
  for (int v : tuple) pts.push_back(vertices.at(v));
  return Simplex(std::move(pts));
}

long grid_cell_coord(const Rat& x, int r) {
  Rat scaled = x * r;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
  long cell = q.get_si();
  if (cell < 0) cell = 0;
  if (cell > r - 1) cell = r - 1;
  return cell;
}

SimplicialComplex kuhn_triangulation(int m, int r) {
  if (m < 1 || r < 1) throw std::invalid_argument("kuhn_triangulation: need m >= 1, r >= 1");

  const long verts_per_axis = r + 1;
  long nverts = 1;
  for (int i = 0; i < m; ++i) nverts *= verts_per_axis;

  auto vertex_index = [&](const std::vector<long>& iv) {
    long id = 0;
    for (int k = 0; k < m; ++k) id = id * verts_per_axis + iv[k];
    return id;
  };

  std::vector<Point> vertices(static_cast<std::size_t>(nverts));
  {
    std::vector<long> iv(m, 0);
    for (long id = 0; id < nverts; ++id) {
      std::vector<Rat> coords(m);
      for (int k = 0; k < m; ++k) coords[k] = Rat(iv[k], r);
      for (auto& c : coords) c.canonicalize();
      vertices[static_cast<std::size_t>(vertex_index(iv))] = Point(coords);
      for (int k = m - 1; k >= 0; --k) {
        if (++iv[k] < verts_per_axis) break;
        iv[k] = 0;
      }
    }
  }

  long ncells = 1;
  for (int i = 0; i < m; ++i) ncells *= r;

  std::vector<std::vector<int>> maximal;
  std::vector<std::vector<std::vector<int>>> tuples_per_cell(static_cast<std::size_t>(ncells));

  std::vector<long> cell(m, 0);
  std::vector<int> perm(m);
  for (long c = 0; c < ncells; ++c) {
    std::iota(perm.begin(), perm.end(), 0);
    long cell_id = 0;
    for (int k = 0; k < m; ++k) cell_id = cell_id * r + cell[k];
    do {
      std::vector<int> tuple;
      tuple.reserve(m + 1);
      std::vector<long> iv = cell;
      tuple.push_back(static_cast<int>(vertex_index(iv)));
      for (int step = 0; step < m; ++step) {
        ++iv[perm[step]];
        tuple.push_back(static_cast<int>(vertex_index(iv)));
      }
      maximal.push_back(tuple);
      tuples_per_cell[static_cast<std::size_t>(cell_id)].push_back(std::move(tuple));
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int k = m - 1; k >= 0; --k) {
      if (++cell[k] < r) break;
      cell[k] = 0;
    }
  }

  SimplicialComplex k = SimplicialComplex::from_maximal(m, std::move(vertices), maximal);

  GridIndex gi;
  gi.r = r;
  gi.cell_tops.resize(static_cast<std::size_t>(ncells));
  for (long c = 0; c < ncells; ++c) {
    for (auto& t : tuples_per_cell[static_cast<std::size_t>(c)]) {
      int id = k.simplex_id(t);
      gi.cell_tops[static_cast<std::size_t>(c)].push_back(id);
    }
  }
  k.grid = std::move(gi);
  return k;
}

SimplicialComplex barycentric_subdivision(const SimplicialComplex& k) {
  if (k.empty()) {
    SimplicialComplex out;
    out.dim = k.dim;
    return out;
  }
  // One new vertex per old simplex: its barycentre. Barycentres of
  // 0-simplices coincide with the old vertices.
  std::vector<Point> new_vertices(k.simplices.size());
  for (std::size_t id = 0; id < k.simplices.size(); ++id) {
    new_vertices[id] = k.geometric(static_cast<int>(id)).barycentre();
  }

  // Simplices are chains of proper faces; every chain extends to a maximal
  // flag inside a maximal simplex, so flags generate the subdivision.
  std::vector<std::vector<int>> maximal;
  for (int mid : k.maximal_ids) {
    std::vector<int> tuple = k.simplices[mid];
    std::sort(tuple.begin(), tuple.end());
    do {
      std::vector<int> chain;
      std::vector<int> prefix;
      for (int v : tuple) {
        prefix.push_back(v);
        std::vector<int> sorted_prefix = prefix;
        std::sort(sorted_prefix.begin(), sorted_prefix.end());
        int old_id = k.simplex_id(sorted_prefix);
        chain.push_back(old_id);
      }
      maximal.push_back(std::move(chain));
    } while (std::next_permutation(tuple.begin(), tuple.end()));
  }
  return SimplicialComplex::from_maximal(k.dim, std::move(new_vertices), std::move(maximal));
}

Rat mesh(const SimplicialComplex& k) {
  if (k.empty()) throw std::invalid_argument("mesh: empty complex");
  Rat m(0);
  for (int id : k.maximal_ids) m = rat_max(m, k.geometric(id).diameter_inf());
  return m;
}

Rat total_volume(const SimplicialComplex& k) {
  Rat v(0);
  for (int id : k.top_ids) v += simplex_volume(k.geometric(id));
  return v;
}

SimplicialComplex insert_vertex(const Simplex& sigma, const Point& z) {
  auto alpha = barycentric_coordinates(sigma, z);
  if (!alpha) throw std::invalid_argument("insert_vertex: z is outside the affine hull");
  std::vector<int> support;
  for (std::size_t i = 0; i < alpha->size(); ++i) {
    if ((*alpha)[i] < 0) throw std::invalid_argument("insert_vertex: z is outside the simplex");
    if ((*alpha)[i] > 0) support.push_back(static_cast<int>(i));
  }
  if (support.size() == 1) throw std::invalid_argument("insert_vertex: z is already a vertex");

  std::vector<Point> verts = sigma.vertices;
  verts.push_back(z);
  const int zid = static_cast<int>(verts.size()) - 1;
  const int n = static_cast<int>(sigma.vertices.size());

  std::vector<std::vector<int>> maximal;
  for (int i : support) {
    std::vector<int> tuple;
    for (int j = 0; j < n; ++j) {
      tuple.push_back(j == i ? zid : j);
    }
    maximal.push_back(std::move(tuple));
  }
  return SimplicialComplex::from_maximal(sigma.ambient_dim(), std::move(verts),
                                         std::move(maximal));
}

namespace {

const std::vector<int>* candidate_tops(const SimplicialComplex& k, const Point& x,
                                       std::vector<int>& scratch) {
  if (k.grid) {
    const int r = k.grid->r;
    long cell_id = 0;
    for (int c = 0; c < k.dim; ++c) cell_id = cell_id * r + grid_cell_coord(x.coords[c], r);
    if (cell_id >= 0 && cell_id < static_cast<long>(k.grid->cell_tops.size())) {
      return &k.grid->cell_tops[static_cast<std::size_t>(cell_id)];
    }
  }
  scratch = k.top_ids;
  return &scratch;
}

}  // namespace

int locate_top(const SimplicialComplex& k, const Point& x) {
  std::vector<int> scratch;
  const std::vector<int>* cands = candidate_tops(k, x, scratch);
  for (int id : *cands) {
    if (simplex_contains(k.geometric(id), x)) return id;
  }
  // Grid lookup can miss points only through clamping at the boundary; a
  // full scan settles it.
  if (k.grid) {
    for (int id : k.top_ids) {
      if (simplex_contains(k.geometric(id), x)) return id;
    }
  }
  return -1;
}

int locate(const SimplicialComplex& k, const Point& x) {
  std::vector<int> scratch;
  const std::vector<int>* cands = candidate_tops(k, x, scratch);

  auto face_in = [&](int top_id) -> int {
    const Simplex s = k.geometric(top_id);
    auto alpha = barycentric_coordinates(s, x);
    if (!alpha) return -1;
    std::vector<int> face;
    for (std::size_t i = 0; i < alpha->size(); ++i) {
      if ((*alpha)[i] < 0) return -1;
      if ((*alpha)[i] > 0) face.push_back(k.simplices[top_id][i]);
    }
    int id = k.simplex_id(face);
    if (id < 0) throw std::logic_error("locate: face closure violated");
    return id;
  };

  for (int id : *cands) {
    int f = face_in(id);
    if (f >= 0) return f;
  }
  if (k.grid) {
    for (int id : k.top_ids) {
      int f = face_in(id);
      if (f >= 0) return f;
    }
  }
  // Lower-dimensional maximal simplices (non-pure complexes).
  for (int id : k.maximal_ids) {
    if (static_cast<int>(k.simplices[id].size()) == k.dim + 1) continue;
    const Simplex s = k.geometric(id);
    auto alpha = barycentric_coordinates(s, x);
    if (!alpha) continue;
    std::vector<int> face;
    bool inside = true;
    for (std::size_t i = 0; i < alpha->size() && inside; ++i) {
      if ((*alpha)[i] < 0) inside = false;
      if ((*alpha)[i] > 0) face.push_back(k.simplices[id][i]);
    }
    if (inside) return k.simplex_id(face);
  }
  throw std::invalid_argument("locate: point is outside the carrier");
}

std::vector<int> star(const SimplicialComplex& k, const std::vector<int>& sigma0_tuple) {
  std::vector<int> sorted = sigma0_tuple;
  std::sort(sorted.begin(), sorted.end());
  if (k.simplex_id(sorted) < 0) throw std::invalid_argument("star: simplex not in complex");
  std::vector<int> out;
  for (int id : k.top_ids) {
    const auto& t = k.simplices[id];
    bool meets = false;
    // Both tuples sorted: linear intersection test.
    std::size_t i = 0, j = 0;
    while (i < t.size() && j < sorted.size()) {
      if (t[i] == sorted[j]) {
        meets = true;
        break;
      }
      if (t[i] < sorted[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    if (meets) out.push_back(id);
  }
  return out;
}

bool validate_complex(const SimplicialComplex& k, std::size_t max_pairs) {
  const std::size_t n = k.maximal_ids.size();
  if (n * (n - 1) / 2 > max_pairs) {
    throw std::invalid_argument("validate_complex: too many pairs; raise max_pairs");
  }
  std::vector<Simplex> geo;
  std::vector<Box> boxes;
  geo.reserve(n);
  for (int id : k.maximal_ids) {
    Simplex s = k.geometric(id);
    Point lo = s.vertices.front(), hi = s.vertices.front();
    for (const auto& v : s.vertices) {
      for (int c = 0; c < k.dim; ++c) {
        lo.coords[c] = rat_min(lo.coords[c], v.coords[c]);
        hi.coords[c] = rat_max(hi.coords[c], v.coords[c]);
      }
    }
    boxes.push_back({lo, hi});
    geo.push_back(std::move(s));
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      bool disjoint_boxes = false;
      for (int c = 0; c < k.dim && !disjoint_boxes; ++c) {
        disjoint_boxes = boxes[a].hi.coords[c] < boxes[b].lo.coords[c] ||
                         boxes[b].hi.coords[c] < boxes[a].lo.coords[c];
      }
      if (disjoint_boxes) continue;
      const auto& ta = k.simplices[k.maximal_ids[a]];
      const auto& tb = k.simplices[k.maximal_ids[b]];
      std::vector<std::pair<int, int>> shared;
      for (std::size_t i = 0; i < ta.size(); ++i) {
        for (std::size_t j = 0; j < tb.size(); ++j) {
          if (ta[i] == tb[j]) shared.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
      }
      if (!proper_intersection(geo[a], geo[b], shared)) return false;
    }
  }
  return true;
}

SimplicialComplex replace_top_simplex(const SimplicialComplex& k, int top_id,
                                      const SimplicialComplex& local) {
  if (local.dim != k.dim) throw std::invalid_argument("replace_top_simplex: dimension mismatch");
  const auto& target = k.simplices.at(top_id);
  if (static_cast<int>(target.size()) != k.dim + 1) {
    throw std::invalid_argument("replace_top_simplex: not a top simplex");
  }

  std::vector<Point> verts = k.vertices;
  std::vector<int> local_to_global(local.vertices.size(), -1);
  for (std::size_t lv = 0; lv < local.vertices.size(); ++lv) {
    int match = -1;
    for (int gv : target) {
      if (k.vertices[gv] == local.vertices[lv]) {
        match = gv;
        break;
      }
    }
    if (match >= 0) {
      local_to_global[lv] = match;
    } else {
      local_to_global[lv] = static_cast<int>(verts.size());
      verts.push_back(local.vertices[lv]);
    }
  }

  std::vector<std::vector<int>> maximal;
  maximal.reserve(k.maximal_ids.size() + local.maximal_ids.size());
  for (int id : k.maximal_ids) {
    if (id == top_id) continue;
    maximal.push_back(k.simplices[id]);
  }
  for (int id : local.maximal_ids) {
    std::vector<int> mapped;
    mapped.reserve(local.simplices[id].size());
    for (int v : local.simplices[id]) mapped.push_back(local_to_global[v]);
    maximal.push_back(std::move(mapped));
  }
  SimplicialComplex out = SimplicialComplex::from_maximal(k.dim, std::move(verts),
                                                          std::move(maximal));
  if (k.grid) {
    GridIndex gi;
    gi.r = k.grid->r;
    gi.cell_tops.resize(k.grid->cell_tops.size());
    for (int id : out.top_ids) {
      Point b = out.geometric(id).barycentre();
      long cell_id = 0;
      for (int c = 0; c < out.dim; ++c) cell_id = cell_id * gi.r + grid_cell_coord(b.coords[c], gi.r);
      gi.cell_tops[static_cast<std::size_t>(cell_id)].push_back(id);
    }
    out.grid = std::move(gi);
  }
  return out;
}

}  // namespace itroots
