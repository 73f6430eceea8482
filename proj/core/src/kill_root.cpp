#include <algorithm>
#include <stdexcept>

#include "itroots/constructions.hpp"
#include "itroots/linear_feasibility.hpp"

namespace itroots {

namespace {

AffinePiece invert_piece(const AffinePiece& a) {
  const int m = static_cast<int>(a.matrix.size());
  // Solve [A | I] row-reduced; offset' = -A^{-1} b.
  std::vector<std::vector<Rat>> aug(m, std::vector<Rat>(2 * m, Rat(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) aug[i][j] = a.matrix[i][j];
    aug[i][m + i] = 1;
  }
  for (int col = 0; col < m; ++col) {
    int pivot = -1;
    for (int r = col; r < m; ++r) {
      if (aug[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw std::invalid_argument("invert_piece: singular matrix");
    std::swap(aug[pivot], aug[col]);
    Rat d = aug[col][col];
    for (int j = 0; j < 2 * m; ++j) aug[col][j] /= d;
    for (int r = 0; r < m; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      Rat f = aug[r][col];
      for (int j = 0; j < 2 * m; ++j) aug[r][j] -= f * aug[col][j];
    }
  }
  AffinePiece inv;
  inv.matrix.assign(m, std::vector<Rat>(m, Rat(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) inv.matrix[i][j] = aug[i][m + j];
  }
  Point minus_b(std::vector<Rat>(m, Rat(0)));
  for (int i = 0; i < m; ++i) minus_b.coords[i] = -a.offset.coords[i];
  inv.offset = Point(std::vector<Rat>(m, Rat(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) inv.offset.coords[i] += inv.matrix[i][j] * minus_b.coords[j];
  }
  return inv;
}

Simplex map_simplex(const AffinePiece& a, const Simplex& s) {
  std::vector<Point> pts;
  pts.reserve(s.vertices.size());
  for (const auto& v : s.vertices) pts.push_back(a.apply(v));
  return Simplex(std::move(pts));
}

// Concentric-shell triangulation of one full simplex around an interior
// centre: ring j holds the vertices c + 2^{-j}(q_i - c); consecutive rings
// are joined by prism blocks coned from their centroids, so the outer
// boundary faces of the simplex stay whole and the patch conforms with the
// rest of the complex.
struct ShellPatch {
  SimplicialComplex local;
  std::vector<int> sigma0_tuple;                // local ids of the inner simplex
  std::vector<std::vector<int>> inner_blocks;   // tuples of the innermost shell
};

ShellPatch build_shells(const Simplex& delta, const Point& centre, int rings) {
  const int m = delta.ambient_dim();
  const int nv = m + 1;
  std::vector<Point> verts;
  auto ring_vertex_id = [&](int j, int i) { return j * nv + i; };
  Rat t(1);
  for (int j = 0; j <= rings; ++j) {
    for (int i = 0; i < nv; ++i) {
      verts.push_back(centre + t * (delta.vertices[i] - centre));
    }
    t /= 2;
  }

  std::vector<std::vector<int>> maximal;
  std::vector<std::vector<int>> inner_blocks;

  for (int j = 0; j < rings; ++j) {
    const bool innermost = j == rings - 1;
    for (int skip = 0; skip < nv; ++skip) {
      // Facet opposite vertex `skip`, between ring j (outer) and j+1 (inner).
      std::vector<int> outer, inner;
      for (int i = 0; i < nv; ++i) {
        if (i == skip) continue;
        outer.push_back(ring_vertex_id(j, i));
        inner.push_back(ring_vertex_id(j + 1, i));
      }
      std::vector<std::vector<int>> blocks;
      if (m == 1) {
        blocks.push_back({outer[0], inner[0]});
      } else {
        // Centroid of the prism corners.
        Point c(std::vector<Rat>(m, Rat(0)));
        for (int v : outer) c = c + verts[v];
        for (int v : inner) c = c + verts[v];
        c = Rat(1, static_cast<unsigned long>(2 * m)) * c;
        int cid = static_cast<int>(verts.size());
        verts.push_back(c);

        if (m == 2) {
          blocks.push_back({cid, outer[0], outer[1]});
          blocks.push_back({cid, inner[0], inner[1]});
          blocks.push_back({cid, outer[0], inner[0]});
          blocks.push_back({cid, outer[1], inner[1]});
        } else {  // m == 3
          blocks.push_back({cid, outer[0], outer[1], outer[2]});
          blocks.push_back({cid, inner[0], inner[1], inner[2]});
          for (int s = 0; s < 3; ++s) {
            for (int t = s + 1; t < 3; ++t) {
              // Quad over the facet edge {s,t}: corners As At Bt Bs.
              int as = outer[s], at = outer[t], bt = inner[t], bs = inner[s];
              int mn = std::min(std::min(as, at), std::min(bt, bs));
              if (mn == as || mn == bt) {
                blocks.push_back({cid, as, at, bt});
                blocks.push_back({cid, as, bt, bs});
              } else {
                blocks.push_back({cid, as, at, bs});
                blocks.push_back({cid, at, bt, bs});
              }
            }
          }
        }
      }
      for (auto& b : blocks) {
        if (innermost) inner_blocks.push_back(b);
        maximal.push_back(std::move(b));
      }
    }
  }

  std::vector<int> sigma0;
  for (int i = 0; i < nv; ++i) sigma0.push_back(ring_vertex_id(rings, i));
  maximal.push_back(sigma0);

  ShellPatch patch;
  patch.local = SimplicialComplex::from_maximal(m, std::move(verts), std::move(maximal));
  patch.sigma0_tuple = sigma0;
  patch.inner_blocks = std::move(inner_blocks);

  if (!(total_volume(patch.local) == simplex_volume(delta))) {
    throw std::logic_error("build_shells: carrier volume mismatch");
  }
  return patch;
}

}  // namespace

KillResult kill_square_root(const PLMap& f0_input, const Rat& budget, const KillOptions& opts) {
  const int m = f0_input.dim();
  if (m < 1 || m > 3) throw std::invalid_argument("kill_square_root: m must be 1, 2 or 3");
  if (budget <= 0) throw std::invalid_argument("kill_square_root: budget must be positive");

  KillResult res;
  PLMap f0 = f0_input;
  Rat budget_left = budget;

  for (int id : f0.complex.top_ids) {
    if (!restriction_injective(f0, id)) {
      throw std::invalid_argument("kill_square_root: piece " + std::to_string(id) +
                                  " of f0 is not injective");
    }
  }

  // Vertices fixed by f0 block the displaced-point search; re-perturb them
  // within half the budget (needed e.g. for the identity interpolation).
  {
    std::vector<std::size_t> fixed;
    for (std::size_t j = 0; j < f0.images.size(); ++j) {
      if (f0.images[j] == f0.complex.vertices[j]) fixed.push_back(j);
    }
    if (!fixed.empty()) {
      RatRng rng(opts.seed ^ 0x9e3779b97f4a7c15ull);
      Rat rho = budget_left / 2;
      if (f0.complex.grid) rho = rat_min(rho, Rat(1, 4L * f0.complex.grid->r));
      Rat moved(0);
      for (std::size_t j : fixed) {
        const Point& x = f0.complex.vertices[j];
        for (int attempt = 0;; ++attempt) {
          if (attempt > 1000) {
            throw std::runtime_error("kill_square_root: re-perturbation budget exhausted");
          }
          Point y(std::vector<Rat>(m, Rat(0)));
          for (int c = 0; c < m; ++c) {
            Rat lo = rat_max(x.coords[c] - rho, Rat(0));
            Rat hi = rat_min(x.coords[c] + rho, Rat(1));
            y.coords[c] = rng.uniform(lo, hi);
          }
          if (y == x) continue;
          Point old = f0.images[j];
          f0.images[j] = y;
          bool ok = true;
          for (int id : star(f0.complex, {static_cast<int>(j)})) {
            if (!restriction_injective(f0, id)) {
              ok = false;
              break;
            }
          }
          if (ok) {
            moved = rat_max(moved, inf_dist(y, old));
            break;
          }
          f0.images[j] = old;
        }
      }
      budget_left -= moved;
      res.log.push_back("re-perturbed " + std::to_string(fixed.size()) +
                        " fixed vertices by up to " + rat_to_string(moved));
    }
  }

  // Step 2: a source piece, the piece Delta holding the barycentre of its
  // image, and a target piece Delta1 holding that point's image.
  const int src_id = f0.complex.top_ids.front();
  const Simplex src_image = image_simplex(f0, src_id);
  Point c = src_image.barycentre();

  int delta_id = -1, delta1_id = -1;
  {
    Rat step(1, 4);
    for (int attempt = 0;; ++attempt) {
      if (attempt > 64) throw std::runtime_error("kill_square_root: step 2 failed to find Delta");
      int top = locate_top(f0.complex, c);
      if (top >= 0 && open_simplex_contains(f0.complex.geometric(top), c)) {
        Point fc = evaluate(f0, c);
        int top1 = locate_top(f0.complex, fc);
        if (top1 >= 0 && open_simplex_contains(f0.complex.geometric(top1), fc)) {
          delta_id = top;
          delta1_id = top1;
          break;
        }
      }
      c = c + step * (src_image.vertices[0] - c);
      step /= 2;
    }
  }
  const Simplex delta = f0.complex.geometric(delta_id);
  const Simplex delta1 = f0.complex.geometric(delta1_id);
  const AffinePiece a_delta = affine_piece(f0, delta_id);
  const AffinePiece a_delta_inv = invert_piece(a_delta);

  // Shrink a copy of the image simplex toward c until it sits inside Delta's
  // interior and its image sits inside Delta1's interior.
  Simplex y_region = src_image;
  {
    int halvings = 0;
    Rat scale(1, 2);
    for (;; scale /= 2) {
      if (++halvings > 80) throw std::runtime_error("kill_square_root: step 2 shrink failed");
      std::vector<Point> pts;
      for (const auto& w : src_image.vertices) {
        pts.push_back(c + scale * (w - c));
      }
      Simplex cand(pts);
      bool ok = true;
      for (const auto& w : cand.vertices) {
        if (!open_simplex_contains(delta, w)) ok = false;
      }
      if (ok) {
        for (const auto& w : cand.vertices) {
          if (!open_simplex_contains(delta1, a_delta.apply(w))) ok = false;
        }
      }
      if (ok) {
        y_region = cand;
        break;
      }
    }
  }

  // Step 3: displaced point z0 among Y's vertices, then the separation ball.
  Point z0;
  {
    bool found = false;
    for (const auto& w : y_region.vertices) {
      if (!(a_delta.apply(w) == w)) {
        z0 = w;
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::runtime_error("kill_square_root: step 3 found no displaced point in Y");
    }
  }
  const Rat eps0 = inf_dist(z0, a_delta.apply(z0));
  const Rat lip = lipschitz_constant(f0);
  const Rat delta_radius = eps0 / (4 * rat_max(Rat(1), lip));
  Box v_box;
  v_box.lo = z0;
  v_box.hi = z0;
  for (int i = 0; i < m; ++i) {
    v_box.lo.coords[i] -= delta_radius / 2;
    v_box.hi.coords[i] += delta_radius / 2;
  }
  res.z0 = z0;
  res.displacement = eps0;
  res.delta = delta_radius;
  res.separation_box = v_box;

  // Shell centre: nudge z0 into Y's interior, staying well inside V.
  Point y_bar = y_region.barycentre();
  Point centre;
  {
    Rat dist_bar = inf_dist(y_bar, z0);
    Rat cap = rat_min(delta_radius / 4, eps0 / (4 * (1 + lip)));
    Rat t(1, 8);
    while (t * dist_bar >= cap) t /= 2;
    centre = z0 + t * (y_bar - z0);
  }

  // Step 4: grow the shell depth until the inner star satisfies every exact
  // condition: inside V, sigma0 inside Y, preimage and image of sigma0 miss
  // the star, and the collapse stays within budget.
  ShellPatch patch;
  int rings = -1;
  std::string failure;
  for (int j = 2; j <= opts.ring_cap; ++j) {
    patch = build_shells(delta, centre, j);
    const auto& local = patch.local;
    Simplex sigma0_geom = local.geometric_of(patch.sigma0_tuple);

    failure.clear();
    for (const auto& tup : patch.inner_blocks) {
      for (int v : tup) {
        if (!v_box.strictly_contains(local.vertices[v])) failure = "star not inside V";
      }
    }
    for (int v : patch.sigma0_tuple) {
      if (!v_box.strictly_contains(local.vertices[v])) failure = "star not inside V";
      if (!open_simplex_contains(y_region, local.vertices[v])) failure = "sigma0 not inside Y";
    }
    if (failure.empty()) {
      Simplex pre = map_simplex(a_delta_inv, sigma0_geom);
      Simplex img = map_simplex(a_delta, sigma0_geom);
      if (img.diameter_inf() > budget_left) failure = "collapse exceeds budget";
      std::vector<std::vector<int>> star_tuples = patch.inner_blocks;
      star_tuples.push_back(patch.sigma0_tuple);
      for (const auto& tup : star_tuples) {
        if (!failure.empty()) break;
        Simplex s = local.geometric_of(tup);
        if (simplices_intersect(pre, s)) failure = "preimage of sigma0 meets its star";
        if (!failure.empty()) break;
        if (simplices_intersect(img, s)) failure = "image of sigma0 meets its star";
      }
    }
    if (failure.empty()) {
      rings = j;
      break;
    }
  }
  if (rings < 0) {
    throw std::runtime_error("kill_square_root: step 4 failed at ring cap: " + failure);
  }
  res.log.push_back("shell depth " + std::to_string(rings));

  // Assemble the refined complex and both maps on it.
  SimplicialComplex refined = replace_top_simplex(f0.complex, delta_id, patch.local);
  const std::size_t old_n = f0.complex.vertices.size();
  std::vector<Point> images0(refined.vertices.size());
  for (std::size_t v = 0; v < old_n; ++v) images0[v] = f0.images[v];
  for (std::size_t v = old_n; v < refined.vertices.size(); ++v) {
    images0[v] = a_delta.apply(refined.vertices[v]);
  }

  // sigma0's tuple in global ids, matched by exact coordinates.
  std::vector<int> sigma0_global;
  for (int lv : patch.sigma0_tuple) {
    const Point& p = patch.local.vertices[lv];
    int gid = -1;
    for (std::size_t v = old_n; v < refined.vertices.size() && gid < 0; ++v) {
      if (refined.vertices[v] == p) gid = static_cast<int>(v);
    }
    if (gid < 0) throw std::logic_error("kill_square_root: sigma0 vertex not found");
    sigma0_global.push_back(gid);
  }
  std::sort(sigma0_global.begin(), sigma0_global.end());

  // Step 4 continued: the constant value v0 is the image of a sigma0 vertex
  // that is itself displaced by f0.
  Point v0;
  {
    bool found = false;
    for (int gv : sigma0_global) {
      Point cand = images0[gv];
      if (!(evaluate(f0, cand) == cand)) {
        v0 = cand;
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::runtime_error("kill_square_root: step 4 found no displaced image value");
    }
  }

  std::vector<Point> images = images0;
  for (int gv : sigma0_global) images[gv] = v0;

  res.f0_refined = interpolate(refined, std::move(images0), SelfMapCheck::None);
  res.f = interpolate(std::move(refined), std::move(images), SelfMapCheck::None);
  res.sigma0 = sigma0_global;
  res.v0 = v0;
  res.star_ids = star(res.f.complex, sigma0_global);
  res.sup_change = sup_distance_vertices(res.f, res.f0_refined);
  if (res.sup_change > budget_left) {
    throw std::logic_error("kill_square_root: budget exceeded after collapse");
  }

  // Step 5: witness piece whose image covers sigma0's interior.
  NoRootCertificate cert;
  cert.sigma0 = sigma0_global;
  cert.v0 = v0;
  cert.f_v0 = evaluate(res.f, v0);
  {
    const AffinePiece a_src = affine_piece(f0, src_id);
    const AffinePiece a_src_inv = invert_piece(a_src);
    Simplex sigma0_geom = res.f.complex.geometric_of(sigma0_global);
    Point bar = sigma0_geom.barycentre();
    bool done = false;
    Rat nudge(1, 3);
    for (int t = 0; t < opts.witness_retry && !done; ++t, nudge /= 2) {
      Point w = t == 0 ? bar : bar + nudge * (sigma0_geom.vertices[0] - bar);
      Point x_star = a_src_inv.apply(w);
      int piece = -1;
      if (src_id != delta_id) {
        piece = res.f.complex.simplex_id(f0.complex.simplices[src_id]);
      } else {
        int top = locate_top(res.f.complex, x_star);
        if (top < 0) continue;
        piece = top;
      }
      if (piece < 0) continue;
      Simplex piece_geom = res.f.complex.geometric(piece);
      if (!open_simplex_contains(piece_geom, x_star)) continue;
      bool disjoint = true;
      for (int v : res.f.complex.simplices[piece]) {
        if (std::binary_search(sigma0_global.begin(), sigma0_global.end(), v)) disjoint = false;
      }
      if (!disjoint) continue;
      cert.sigma_star = res.f.complex.simplices[piece];
      cert.witness_point = w;
      done = true;
    }
    if (!done) throw std::runtime_error("kill_square_root: step 5 failed to place a witness");
  }
  cert.notes.push_back("collapse of a full simplex; adjacent pieces necessarily map onto "
                       "segments through v0");
  res.certificate = cert;
  res.report = check_no_root_certificate(res.f, res.certificate);
  res.certificate.ledger_failures = res.report.ledger_failures;
  res.certificate_valid = res.report.all();
  return res;
}

}  // namespace itroots
