#pragma once

#include <optional>
#include <string>
#include <vector>

#include "itroots/certificates.hpp"
#include "itroots/complex.hpp"
#include "itroots/expr.hpp"
#include "itroots/linear_feasibility.hpp"
#include "itroots/pl_map.hpp"

namespace itroots {

// ---------------------------------------------------------------------------
// PL approximation of a continuous self-map of the unit cube.

struct ApproxOptions {
  std::uint64_t seed = 0;
  int retry_budget = 1000;        // per vertex
  int resolution_override = 0;    // tests may pin the grid
  unsigned log2_den = 20;
};

struct ApproxResult {
  PLMap f0;
  int resolution = 0;       // grid cells per axis; mesh = 1/resolution
  Rat vertex_error;         // exact max |y_j - h(x_j)|
  Rat certified_bound;      // vertex_error + 2*omega(mesh); < eps/6 by construction
  std::vector<std::string> notes;
};

/// Interpolates h on a Kuhn grid chosen so omega(4*mesh) < eps/10, with
/// vertex images perturbed within radius eps/20 so that y_j != x_j, y_j
/// stays in the cube, and every piece's image tuple is geometrically
/// independent. Deterministic for a fixed seed. The certified bound is
/// conditional on omega being a true modulus for h.
ApproxResult approximate_pl(const Evaluable& h, const Modulus& omega, const Rat& eps, int m,
                            const ApproxOptions& opts = {});

// ---------------------------------------------------------------------------
// Collapse pipeline: perturb a PL map into one with a no-root certificate.

struct KillOptions {
  std::uint64_t seed = 1;
  int ring_cap = 96;        // refinement depth cap; failure is reported, not forced
  int witness_retry = 128;
};

struct KillResult {
  PLMap f;             // modified map, constant on sigma0
  PLMap f0_refined;    // the input map re-interpolated on the same complex
  NoRootCertificate certificate;
  CertificateCheckReport report;
  bool certificate_valid = false;

  // Construction data, re-checkable independently of the certificate.
  std::vector<int> sigma0;      // tuple in f.complex
  Point v0;
  Point z0;                     // displaced point the separation ball is built at
  Rat displacement;             // |z0 - f0(z0)|
  Rat delta;                    // Lemma-L2 radius parameter
  Box separation_box;           // V = ball of radius delta/2 around z0
  std::vector<int> star_ids;    // star(sigma0) in f.complex
  Rat sup_change;               // exact sup |f - f0|
  std::vector<std::string> log;
};

/// Steps 2-5 of the no-root construction: finds a displaced point, builds a
/// separation ball V, refines one piece with concentric shells until the
/// star of an inner simplex sits inside V with the exact separation
/// conditions, collapses that simplex to a displaced value and emits the
/// certificate. The sup change is at most `budget` (maps with fixed vertices
/// are first re-perturbed within budget/2). Throws, naming the failing step,
/// when a condition cannot be realized within the caps.
KillResult kill_square_root(const PLMap& f0, const Rat& budget, const KillOptions& opts = {});

// ---------------------------------------------------------------------------
// Boundary fixed point: approximation by an iterative square.

struct BoundaryOptions {
  std::optional<Rat> grid_step;  // default 2^-10 for m=1, 2^-8 for m=2
};

/// For h fixing a corner of the cube exactly, builds g = f1 o phi on the
/// corner simplex and phi elsewhere, phi an exact PL involution, and
/// certifies sup |g o g - h| < eps on a grid. Throws when certification
/// fails at the configured grid (reporting the achieved bound).
SquareApproxResult boundary_square_approx(const Evaluable& h, const Modulus& omega,
                                          const Point& x0, const Rat& eps,
                                          const BoundaryOptions& opts = {});

// ---------------------------------------------------------------------------
// The strip-rotation example on the unit square.

struct StripExample {
  Rat eps;
  Rat exact_sup;  // sup |target - g o g| = eps/2, attained on the outer strips

  Point target(const Point& xy) const;             // (1-x, 1/2)
  Point g1(const Point& xy) const;                 // quarter-turn with scaling
  Point g2(const Point& xy) const;                 // compression onto the strip
  Point g(const Point& xy) const;                  // g1 o g2
  Point g_squared_formula(const Point& xy) const;  // closed three-case form
};

/// Throws unless 0 < eps < 1/2.
StripExample strip_rotation_example(const Rat& eps);

// ---------------------------------------------------------------------------
// Even-order root obstruction for PL interval maps.

enum class IntervalVerdict { NoEvenOrderRoots, Inconclusive };

struct IntervalObstruction {
  IntervalVerdict verdict = IntervalVerdict::Inconclusive;
  Rat domain_lo, domain_hi;
  Rat range_lo, range_hi;
  std::optional<Rat> fixed_point;
  std::vector<std::pair<Rat, Rat>> e_components;  // path components of E(f)
  bool e_invariant = false;
  bool induced_transposition = false;
  bool even_roots_excluded = false;  // permutation verdict on the transposition
  std::string reason;
};

/// Computes R(f), the fixed point and the path components of E(f) exactly;
/// answers NoEvenOrderRoots when the induced map on the two components is
/// the transposition (which has no even-order roots), else Inconclusive.
IntervalObstruction interval_even_root_obstruction(const PLMap& f);

// ---------------------------------------------------------------------------
// Extension to an iterative square on grid subcomplexes, and L^p denseness.

struct ExtendResult {
  PLMap g;            // on the fine Kuhn grid refining both K and g~(K)
  int coarse_r = 0;
  int fine_r = 0;     // = coarse_r^2
  Rat scale;          // uniform contraction ratio of g~
  Point offset;       // image-cube corner: g~(x) = offset + scale * x
};

/// Builds g with g(g(x)) = f(x) exactly (a rational identity) for every x
/// in |K|: g~ contracts the cube into B, g equals g~ on |K| and f o g~^{-1}
/// on g~(|K|); free vertices copy their nearest assigned vertex value.
/// Requires f's complex to be a Kuhn subcomplex at resolution coarse_r and
/// B a grid-aligned box with |K| and B disjoint.
ExtendResult extend_to_square(const PLMap& f_on_k, const Box& b, int coarse_r);

/// Kuhn triangulation restricted to the given cells (coordinates in
/// [0, r)^m); vertices are re-indexed densely.
SimplicialComplex kuhn_cells_subcomplex(int m, int r, const std::vector<std::vector<long>>& cells);

struct LpResult {
  Rat numeric;   // midpoint quadrature of |g o g - f|^p over the cube
  Rat bound;     // 1 - (1 - eps)^m
  int quad_r = 0;
  ExtendResult ext;
};

/// Extends f restricted to the [eps,1]^m block to an exact square and
/// integrates the residual; numeric <= bound holds because the residual
/// vanishes on the block and the sup distance on the cube is at most 1.
LpResult lp_denseness_check(const PLMap& f_full, const Rat& eps, int p);

}  // namespace itroots
