#include "itroots/perturb.hpp"

#include <stdexcept>

namespace itroots {

namespace {

// Every subset Z of chosen with #Z <= m must stay affinely independent of y
// for the inductive invariant (all (m+1)-subsets independent) to extend.
bool independent_of_all_small_subsets(const Point& y, const std::vector<Point>& chosen, int m) {
  const std::size_t n = chosen.size();
  std::vector<int> idx;
  // Enumerate subsets of size 1..m (m <= 3 in the pipelines; inputs are small).
  std::vector<int> stack;
  auto rec = [&](auto&& self, std::size_t start) -> bool {
    if (!stack.empty()) {
      std::vector<Point> sub;
      sub.reserve(stack.size());
      for (int i : stack) sub.push_back(chosen[i]);
      if (!is_affinely_independent_of(y, sub)) return false;
    }
    if (static_cast<int>(stack.size()) == m) return true;
    for (std::size_t i = start; i < n; ++i) {
      stack.push_back(static_cast<int>(i));
      if (!self(self, i + 1)) return false;
      stack.pop_back();
    }
    return true;
  };
  return rec(rec, 0);
}

}  // namespace

std::vector<Point> perturb_generic(const std::vector<Point>& targets,
                                   const std::vector<Rat>& radii,
                                   const std::vector<Point>& forbidden,
                                   const std::optional<Box>& box,
                                   const PerturbOptions& opts) {
  if (targets.size() != radii.size() || targets.size() != forbidden.size()) {
    throw std::invalid_argument("perturb_generic: input lists must have equal length");
  }
  if (targets.empty()) return {};
  const int m = targets.front().dim();
  for (const auto& r : radii) {
    if (r <= 0) throw std::invalid_argument("perturb_generic: radii must be positive");
  }

  RatRng rng(opts.seed);
  std::vector<Point> out;
  out.reserve(targets.size());

  for (std::size_t j = 0; j < targets.size(); ++j) {
    bool placed = false;
    for (int attempt = 0; attempt < opts.retry_budget && !placed; ++attempt) {
      Point y(std::vector<Rat>(m, Rat(0)));
      for (int c = 0; c < m; ++c) {
        Rat lo = targets[j].coords[c] - radii[j];
        Rat hi = targets[j].coords[c] + radii[j];
        if (box) {
          lo = rat_max(lo, box->lo.coords[c]);
          hi = rat_min(hi, box->hi.coords[c]);
        }
        if (hi < lo) throw std::invalid_argument("perturb_generic: ball misses the box");
        y.coords[c] = rng.uniform(lo, hi, opts.log2_den);
      }
      if (inf_dist(y, targets[j]) >= radii[j]) continue;  // open ball
      if (y == forbidden[j]) continue;
      if (!independent_of_all_small_subsets(y, out, m)) continue;
      out.push_back(std::move(y));
      placed = true;
    }
    if (!placed) {
      throw std::runtime_error("perturb_generic: retry budget exhausted at point " +
                               std::to_string(j));
    }
  }
  return out;
}

}  // namespace itroots
