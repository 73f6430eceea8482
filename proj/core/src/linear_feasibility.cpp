#include "itroots/linear_feasibility.hpp"

#include <algorithm>
#include <stdexcept>

namespace itroots {

bool Box::contains(const Point& x) const {
  for (int i = 0; i < x.dim(); ++i) {
    if (x.coords[i] < lo.coords[i] || x.coords[i] > hi.coords[i]) return false;
  }
  return true;
}

bool Box::strictly_contains(const Point& x) const {
  for (int i = 0; i < x.dim(); ++i) {
    if (x.coords[i] <= lo.coords[i] || x.coords[i] >= hi.coords[i]) return false;
  }
  return true;
}

namespace {

using Rel = LinearConstraint::Rel;

struct Stage {
  int var;
  std::vector<LinearConstraint> rows;  // rows involving var, pre-elimination
};

int first_nonzero(const std::vector<Rat>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

void normalize(LinearConstraint& c) {
  int lead = first_nonzero(c.coeffs);
  if (lead < 0) return;
  Rat scale = rat_abs(c.coeffs[lead]);
  for (auto& x : c.coeffs) x /= scale;
  c.rhs /= scale;
}

bool same_row(const LinearConstraint& a, const LinearConstraint& b) {
  return a.rel == b.rel && a.rhs == b.rhs && a.coeffs == b.coeffs;
}

}  // namespace

std::optional<std::vector<Rat>> solve_feasible(int nvars, std::vector<LinearConstraint> rows) {
  for (auto& r : rows) {
    if (static_cast<int>(r.coeffs.size()) != nvars) {
      throw std::invalid_argument("solve_feasible: row width mismatch");
    }
  }

  // Phase 1: substitute equalities out.
  struct Subst {
    int var;
    LinearConstraint eq;  // sum coeffs * x = rhs with coeffs[var] != 0
  };
  std::vector<Subst> substs;
  std::vector<LinearConstraint> ineqs;
  std::vector<LinearConstraint> pending = std::move(rows);
  while (true) {
    int eq_idx = -1;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (pending[i].rel == Rel::Eq) {
        eq_idx = static_cast<int>(i);
        break;
      }
    }
    if (eq_idx < 0) break;
    LinearConstraint eq = pending[eq_idx];
    pending.erase(pending.begin() + eq_idx);
    int v = first_nonzero(eq.coeffs);
    if (v < 0) {
      if (eq.rhs != 0) return std::nullopt;  // 0 = c with c != 0
      continue;
    }
    for (auto& r : pending) {
      if (r.coeffs[v] == 0) continue;
      Rat factor = r.coeffs[v] / eq.coeffs[v];
      for (int j = 0; j < nvars; ++j) r.coeffs[j] -= factor * eq.coeffs[j];
      r.rhs -= factor * eq.rhs;
    }
    substs.push_back({v, eq});
  }
  ineqs = std::move(pending);

  // Phase 2: Fourier-Motzkin elimination with strictness tracking.
  std::vector<char> active(nvars, 0);
  for (const auto& r : ineqs) {
    for (int j = 0; j < nvars; ++j) {
      if (r.coeffs[j] != 0) active[j] = 1;
    }
  }
  std::vector<Stage> stages;
  while (true) {
    // Pick the active variable minimizing the product of bound counts.
    int best = -1;
    long best_cost = -1;
    for (int v = 0; v < nvars; ++v) {
      if (!active[v]) continue;
      long pos = 0, neg = 0;
      for (const auto& r : ineqs) {
        if (r.coeffs[v] > 0) ++pos;
        if (r.coeffs[v] < 0) ++neg;
      }
      long cost = pos * neg;
      if (best < 0 || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }
    if (best < 0) break;
    active[best] = 0;

    std::vector<LinearConstraint> upper, lower, rest;
    for (auto& r : ineqs) {
      if (r.coeffs[best] > 0) {
        upper.push_back(r);
      } else if (r.coeffs[best] < 0) {
        lower.push_back(r);
      } else {
        rest.push_back(r);
      }
    }
    Stage st{best, {}};
    st.rows.insert(st.rows.end(), upper.begin(), upper.end());
    st.rows.insert(st.rows.end(), lower.begin(), lower.end());
    stages.push_back(st);

    for (const auto& up : upper) {
      for (const auto& lo : lower) {
        LinearConstraint c;
        c.coeffs.assign(nvars, Rat(0));
        // up: a x <= s (a > 0); lo: -b x <= t (b > 0)  =>  combine to drop x.
        Rat a = up.coeffs[best];
        Rat b = -lo.coeffs[best];
        for (int j = 0; j < nvars; ++j) c.coeffs[j] = b * up.coeffs[j] + a * lo.coeffs[j];
        c.rhs = b * up.rhs + a * lo.rhs;
        c.rel = (up.rel == Rel::Lt || lo.rel == Rel::Lt) ? Rel::Lt : Rel::Le;
        c.coeffs[best] = 0;
        normalize(c);
        bool dup = false;
        for (const auto& r : rest) {
          if (same_row(r, c)) {
            dup = true;
            break;
          }
        }
        if (!dup) rest.push_back(std::move(c));
      }
    }
    ineqs = std::move(rest);
  }

  // Only constant rows remain.
  for (const auto& r : ineqs) {
    if (r.rel == Rel::Le && r.rhs < 0) return std::nullopt;
    if (r.rel == Rel::Lt && r.rhs <= 0) return std::nullopt;
  }

  // Phase 3: back-substitute a witness.
  std::vector<Rat> x(nvars, Rat(0));
  std::vector<char> fixed(nvars, 0);
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    std::optional<Rat> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& r : it->rows) {
      Rat a = r.coeffs[it->var];
      Rat rest = r.rhs;
      for (int j = 0; j < nvars; ++j) {
        if (j != it->var) rest -= r.coeffs[j] * x[j];
      }
      Rat bound = rest / a;
      if (a > 0) {  // x <= bound
        if (!hi || bound < *hi) {
          hi = bound;
          hi_strict = r.rel == Rel::Lt;
        } else if (bound == *hi && r.rel == Rel::Lt) {
          hi_strict = true;
        }
      } else {  // x >= bound
        if (!lo || bound > *lo) {
          lo = bound;
          lo_strict = r.rel == Rel::Lt;
        } else if (bound == *lo && r.rel == Rel::Lt) {
          lo_strict = true;
        }
      }
    }
    Rat value;
    if (lo && hi) {
      value = (*lo + *hi) / 2;
      if (*lo == *hi) value = *lo;
    } else if (lo) {
      value = lo_strict ? *lo + 1 : *lo;
    } else if (hi) {
      value = hi_strict ? *hi - 1 : *hi;
    } else {
      value = 0;
    }
    x[it->var] = value;
    fixed[it->var] = 1;
  }
  // Equality substitutions, most recent first.
  for (auto it = substs.rbegin(); it != substs.rend(); ++it) {
    Rat rest = it->eq.rhs;
    for (int j = 0; j < nvars; ++j) {
      if (j != it->var) rest -= it->eq.coeffs[j] * x[j];
    }
    x[it->var] = rest / it->eq.coeffs[it->var];
    fixed[it->var] = 1;
  }
  return x;
}

namespace {

// Shared scaffolding: barycentric variables of one simplex.
void add_simplex_rows(std::vector<LinearConstraint>& rows, int nvars, int offset,
                      const Simplex& s, int sign, int m) {
  const int k1 = static_cast<int>(s.vertices.size());
  // alpha_i >= 0
  for (int i = 0; i < k1; ++i) {
    LinearConstraint c;
    c.coeffs.assign(nvars, Rat(0));
    c.coeffs[offset + i] = -1;
    c.rhs = 0;
    rows.push_back(std::move(c));
  }
  // sum alpha = 1
  {
    LinearConstraint c;
    c.coeffs.assign(nvars, Rat(0));
    for (int i = 0; i < k1; ++i) c.coeffs[offset + i] = 1;
    c.rel = LinearConstraint::Rel::Eq;
    c.rhs = 1;
    rows.push_back(std::move(c));
  }
  // contribution to the coordinate-match equations is assembled by caller
  (void)sign;
  (void)m;
}

}  // namespace

std::optional<Point> simplices_intersect(const Simplex& p, const Simplex& q) {
  const int m = p.ambient_dim();
  if (q.ambient_dim() != m) throw std::invalid_argument("simplices_intersect: dim mismatch");
  const int np = static_cast<int>(p.vertices.size());
  const int nq = static_cast<int>(q.vertices.size());
  const int nvars = np + nq;

  std::vector<LinearConstraint> rows;
  add_simplex_rows(rows, nvars, 0, p, +1, m);
  add_simplex_rows(rows, nvars, np, q, -1, m);
  for (int k = 0; k < m; ++k) {
    LinearConstraint c;
    c.coeffs.assign(nvars, Rat(0));
    for (int i = 0; i < np; ++i) c.coeffs[i] = p.vertices[i].coords[k];
    for (int j = 0; j < nq; ++j) c.coeffs[np + j] = -q.vertices[j].coords[k];
    c.rel = LinearConstraint::Rel::Eq;
    c.rhs = 0;
    rows.push_back(std::move(c));
  }

  auto sol = solve_feasible(nvars, std::move(rows));
  if (!sol) return std::nullopt;
  Point witness(std::vector<Rat>(m, Rat(0)));
  for (int i = 0; i < np; ++i) witness = witness + (*sol)[i] * p.vertices[i];
  if (!simplex_contains(p, witness) || !simplex_contains(q, witness)) {
    throw std::logic_error("simplices_intersect: witness failed re-verification");
  }
  return witness;
}

std::optional<Point> simplex_box_intersect(const Simplex& p, const Box& box) {
  const int m = p.ambient_dim();
  if (box.lo.dim() != m) throw std::invalid_argument("simplex_box_intersect: dim mismatch");
  const int np = static_cast<int>(p.vertices.size());
  std::vector<LinearConstraint> rows;
  add_simplex_rows(rows, np, 0, p, +1, m);
  for (int k = 0; k < m; ++k) {
    LinearConstraint up, down;
    up.coeffs.assign(np, Rat(0));
    down.coeffs.assign(np, Rat(0));
    for (int i = 0; i < np; ++i) {
      up.coeffs[i] = p.vertices[i].coords[k];
      down.coeffs[i] = -p.vertices[i].coords[k];
    }
    up.rhs = box.hi.coords[k];
    down.rhs = -box.lo.coords[k];
    rows.push_back(std::move(up));
    rows.push_back(std::move(down));
  }
  auto sol = solve_feasible(np, std::move(rows));
  if (!sol) return std::nullopt;
  Point witness(std::vector<Rat>(m, Rat(0)));
  for (int i = 0; i < np; ++i) witness = witness + (*sol)[i] * p.vertices[i];
  if (!simplex_contains(p, witness) || !box.contains(witness)) {
    throw std::logic_error("simplex_box_intersect: witness failed re-verification");
  }
  return witness;
}

bool proper_intersection(const Simplex& p, const Simplex& q,
                         const std::vector<std::pair<int, int>>& shared) {
  const int m = p.ambient_dim();
  const int np = static_cast<int>(p.vertices.size());
  const int nq = static_cast<int>(q.vertices.size());
  const int nvars = np + nq;

  std::vector<char> shared_p(np, 0), shared_q(nq, 0);
  for (auto [i, j] : shared) {
    shared_p[i] = 1;
    shared_q[j] = 1;
  }

  auto base_rows = [&]() {
    std::vector<LinearConstraint> rows;
    add_simplex_rows(rows, nvars, 0, p, +1, m);
    add_simplex_rows(rows, nvars, np, q, -1, m);
    for (int k = 0; k < m; ++k) {
      LinearConstraint c;
      c.coeffs.assign(nvars, Rat(0));
      for (int i = 0; i < np; ++i) c.coeffs[i] = p.vertices[i].coords[k];
      for (int j = 0; j < nq; ++j) c.coeffs[np + j] = -q.vertices[j].coords[k];
      c.rel = LinearConstraint::Rel::Eq;
      c.rhs = 0;
      rows.push_back(std::move(c));
    }
    return rows;
  };

  // Meeting in the shared face exactly means no common point puts positive
  // barycentric weight on a non-shared vertex of either simplex.
  for (int i = 0; i < np; ++i) {
    if (shared_p[i]) continue;
    auto rows = base_rows();
    LinearConstraint c;
    c.coeffs.assign(nvars, Rat(0));
    c.coeffs[i] = -1;
    c.rel = LinearConstraint::Rel::Lt;
    c.rhs = 0;  // alpha_i > 0
    rows.push_back(std::move(c));
    if (solve_feasible(nvars, std::move(rows))) return false;
  }
  for (int j = 0; j < nq; ++j) {
    if (shared_q[j]) continue;
    auto rows = base_rows();
    LinearConstraint c;
    c.coeffs.assign(nvars, Rat(0));
    c.coeffs[np + j] = -1;
    c.rel = LinearConstraint::Rel::Lt;
    c.rhs = 0;
    rows.push_back(std::move(c));
    if (solve_feasible(nvars, std::move(rows))) return false;
  }
  return true;
}

}  // namespace itroots
