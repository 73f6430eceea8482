#include <stdexcept>

#include "itroots/constructions.hpp"

namespace itroots {

namespace {

// Smallest r with omega(4/r) < eps/10, i.e. r > 40*lip/eps for linear moduli.
int choose_resolution(const Modulus& omega, const Rat& eps) {
  if (omega.lip <= 0) return 1;
  Rat threshold = 40 * omega.lip / eps;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), threshold.get_num().get_mpz_t(), threshold.get_den().get_mpz_t());
  long r = q.get_si() + 1;
  if (r < 1) r = 1;
  return static_cast<int>(r);
}

}  // namespace

ApproxResult approximate_pl(const Evaluable& h, const Modulus& omega, const Rat& eps, int m,
                            const ApproxOptions& opts) {
  if (m < 1 || m > 3) throw std::invalid_argument("approximate_pl: m must be 1, 2 or 3");
  if (eps <= 0) throw std::invalid_argument("approximate_pl: eps must be positive");

  ApproxResult res;
  res.resolution = opts.resolution_override > 0 ? opts.resolution_override
                                                : choose_resolution(omega, eps);
  SimplicialComplex k = kuhn_triangulation(m, res.resolution);

  const Rat radius = eps / 20;
  RatRng rng(opts.seed);

  std::vector<Point> images(k.vertices.size());
  std::vector<Point> targets(k.vertices.size());

  auto sample_image = [&](std::size_t j) {
    const Point& x = k.vertices[j];
    const Point& target = targets[j];
    for (int attempt = 0; attempt < opts.retry_budget; ++attempt) {
      Point y(std::vector<Rat>(m, Rat(0)));
      for (int c = 0; c < m; ++c) {
        Rat lo = rat_max(target.coords[c] - radius, Rat(0));
        Rat hi = rat_min(target.coords[c] + radius, Rat(1));
        y.coords[c] = rng.uniform(lo, hi, opts.log2_den);
      }
      if (inf_dist(y, target) >= radius) continue;  // open ball per Step 1
      if (y == x) continue;
      images[j] = std::move(y);
      return;
    }
    throw std::runtime_error("approximate_pl: retry budget exhausted at vertex " +
                             std::to_string(j));
  };

  for (std::size_t j = 0; j < k.vertices.size(); ++j) {
    targets[j] = h(k.vertices[j]);
    for (int c = 0; c < m; ++c) {
      if (targets[j].coords[c] < 0 || targets[j].coords[c] > 1) {
        throw std::invalid_argument("approximate_pl: h is not a self-map at vertex " +
                                    std::to_string(j));
      }
    }
    sample_image(j);
  }

  // Independence sweep over the image tuple of every piece; offenders are
  // resampled and the sweep restarts (generic samples pass first time).
  for (int round = 0;; ++round) {
    if (round > opts.retry_budget) {
      throw std::runtime_error("approximate_pl: could not reach generic position");
    }
    bool clean = true;
    for (int id : k.top_ids) {
      const auto& tuple = k.simplices[id];
      std::vector<Point> imgs;
      imgs.reserve(tuple.size());
      for (int v : tuple) imgs.push_back(images[v]);
      if (!is_geometrically_independent(imgs)) {
        for (int v : tuple) sample_image(static_cast<std::size_t>(v));
        clean = false;
      }
    }
    if (clean) break;
  }

  res.vertex_error = Rat(0);
  for (std::size_t j = 0; j < images.size(); ++j) {
    res.vertex_error = rat_max(res.vertex_error, inf_dist(images[j], targets[j]));
  }
  res.certified_bound = res.vertex_error + 2 * omega(Rat(1, res.resolution));
  if (opts.resolution_override == 0 && !(res.certified_bound < eps / 6)) {
    throw std::logic_error("approximate_pl: certified bound failed eps/6 (internal)");
  }
  res.notes.push_back("certified bound conditional on the declared modulus of continuity");
  res.f0 = interpolate(std::move(k), std::move(images), SelfMapCheck::Carrier);
  return res;
}

}  // namespace itroots
