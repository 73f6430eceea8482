#pragma once

#include <optional>
#include <vector>

#include "itroots/linear_feasibility.hpp"

namespace itroots {

struct PerturbOptions {
  std::uint64_t seed = 0;
  int retry_budget = 1000;   // per point
  unsigned log2_den = 20;    // sampled rationals have denominator 2^log2_den
};

/// Replaces the Baire-category argument with a verified randomized search:
/// y_j lands in the open sup-norm ball of radius radii[j] around targets[j],
/// avoids forbidden[j], stays in the box when given, and every subset of the
/// output of size <= m+1 is geometrically independent (verified exactly,
/// incrementally). Deterministic for a fixed seed. Throws when the retry
/// budget is exhausted.
std::vector<Point> perturb_generic(const std::vector<Point>& targets,
                                   const std::vector<Rat>& radii,
                                   const std::vector<Point>& forbidden,
                                   const std::optional<Box>& box,
                                   const PerturbOptions& opts = {});

}  // namespace itroots
