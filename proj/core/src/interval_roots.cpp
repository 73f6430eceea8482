#include <algorithm>
#include <stdexcept>

#include "itroots/constructions.hpp"
#include "itroots/permutation.hpp"

namespace itroots {

namespace {

struct Piece {
  Rat lo, hi;     // domain interval
  Rat slope, b;   // value = slope * x + b
};

// The 1-D map as a sorted list of affine pieces.
std::vector<Piece> pieces_of(const PLMap& f) {
  std::vector<Piece> out;
  for (int id : f.complex.top_ids) {
    const auto& t = f.complex.simplices[id];
    Rat x0 = f.complex.vertices[t[0]].coords[0];
    Rat x1 = f.complex.vertices[t[1]].coords[0];
    Rat y0 = f.images[t[0]].coords[0];
    Rat y1 = f.images[t[1]].coords[0];
    if (x1 < x0) {
      std::swap(x0, x1);
      std::swap(y0, y1);
    }
    Piece p;
    p.lo = x0;
    p.hi = x1;
    p.slope = (y1 - y0) / (x1 - x0);
    p.b = y0 - p.slope * x0;
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  return out;
}

Rat eval_pieces(const std::vector<Piece>& ps, const Rat& x) {
  for (const auto& p : ps) {
    if (x >= p.lo && x <= p.hi) return p.slope * x + p.b;
  }
  throw std::invalid_argument("interval map: point outside domain");
}

}  // namespace

IntervalObstruction interval_even_root_obstruction(const PLMap& f) {
  if (f.dim() != 1) {
    throw std::invalid_argument("interval_even_root_obstruction: map must be one-dimensional");
  }
  IntervalObstruction res;
  auto ps = pieces_of(f);
  if (ps.empty()) throw std::invalid_argument("interval_even_root_obstruction: empty map");

  res.domain_lo = ps.front().lo;
  res.domain_hi = ps.back().hi;

  // Range of a continuous PL interval map: vertex values bound it.
  Rat c = f.images.front().coords[0], d = c;
  for (const auto& y : f.images) {
    c = rat_min(c, y.coords[0]);
    d = rat_max(d, y.coords[0]);
  }
  res.range_lo = c;
  res.range_hi = d;

  if (c == d) {
    res.reason = "range is a single point";
    return res;
  }

  // Strictly decreasing on [c,d]?
  for (const auto& p : ps) {
    Rat lo = rat_max(p.lo, c), hi = rat_min(p.hi, d);
    if (lo < hi && p.slope >= 0) {
      res.reason = "f is not strictly decreasing on its range";
      return res;
    }
  }

  // Unique fixed point p in (c,d): f(c) > c and f(d) < d force a crossing.
  std::optional<Rat> fixed;
  for (const auto& p : ps) {
    Rat lo = rat_max(p.lo, c), hi = rat_min(p.hi, d);
    if (lo > hi) continue;
    if (p.slope == 1) continue;  // decreasing pieces have slope < 0 anyway
    Rat root = p.b / (1 - p.slope);
    if (root >= lo && root <= hi) {
      fixed = root;
      break;
    }
  }
  if (!fixed) {
    res.reason = "no fixed point found in the range";
    return res;
  }
  res.fixed_point = fixed;
  if (!(*fixed > c && *fixed < d)) {
    res.reason = "fixed point sits on the range boundary; E(f) is not two components";
    return res;
  }

  res.e_components = {{c, *fixed}, {*fixed, d}};  // [c,p) and (p,d]

  // Invariance and the induced map: monotone pieces give exact images.
  Rat f_c = eval_pieces(ps, c);
  Rat f_d = eval_pieces(ps, d);
  // f([c,p)) = (p, f(c)] subset (p, d] and f((p,d]) = [f(d), p) subset [c, p).
  res.e_invariant = f_c <= d && f_d >= c;
  res.induced_transposition = res.e_invariant;
  if (!res.e_invariant) {
    res.reason = "E(f) is not invariant under f";
    return res;
  }

  CycleType transposition;
  transposition.counts[2] = 1;
  res.even_roots_excluded = !has_nth_root(transposition, 2);
  if (res.even_roots_excluded) {
    res.verdict = IntervalVerdict::NoEvenOrderRoots;
    res.reason = "induced map on the two components of E(f) is the transposition";
  } else {
    res.reason = "permutation criterion unexpectedly admitted a root";
  }
  return res;
}

}  // namespace itroots
