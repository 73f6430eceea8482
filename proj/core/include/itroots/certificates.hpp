#pragma once

#include <string>
#include <vector>

#include "itroots/pl_map.hpp"

namespace itroots {

/// Finitely checkable witness that a PL self-map has no iterative square
/// root, even a discontinuous one: f collapses a full-dimensional simplex to
/// a displaced value v0, some disjoint injective piece maps onto a
/// neighborhood inside that simplex (so the second preimage of v0 is
/// uncountable), and every other piece is injective (so every other fiber is
/// finite). All checks re-run in exact arithmetic from the map alone.
struct NoRootCertificate {
  std::vector<int> sigma0;      // vertex tuple of the constant m-simplex
  Point v0;                     // the constant value, = f(sigma0)
  Point f_v0;                   // evaluated f(v0), recorded for the reader
  std::vector<int> sigma_star;  // witness piece, disjoint from sigma0
  Point witness_point;          // interior to image(f|sigma_star) and sigma0
  std::string case_tag = "T3-case-iii";
  std::vector<std::string> notes;

  /// Filled by verification: pieces other than sigma0 whose restriction is
  /// not injective. Empty on a valid certificate.
  std::vector<int> ledger_failures;
};

struct CertificateCheckReport {
  bool constancy = false;
  bool displacement = false;
  bool witness_simplex = false;  // sigma_star in complex, != sigma0, disjoint
  bool witness_injective = false;
  bool witness_overlap = false;  // witness point interior to both
  bool ledger = false;
  std::vector<int> ledger_failures;

  bool all() const {
    return constancy && displacement && witness_simplex && witness_injective &&
           witness_overlap && ledger;
  }
};

/// Re-runs every exact check in the certificate against f from scratch,
/// trusting nothing stored beyond the identities of sigma0, v0, sigma_star
/// and the witness point.
CertificateCheckReport check_no_root_certificate(const PLMap& f, const NoRootCertificate& cert);

/// True iff every check passes.
bool verify_no_root_certificate(const PLMap& f, const NoRootCertificate& cert);

/// Output of the boundary square-approximation pipeline: g = f1 o phi on
/// sigma0 and phi elsewhere, with phi an exact PL involution, plus the
/// certified bound on sup |g(g(x)) - h(x)|.
struct SquareApproxResult {
  PLMap f1;
  PLMap phi;
  std::vector<int> sigma0;  // tuple in f1's complex
  Simplex sigma0_geometric;
  Rat certified_bound;
  Rat grid_step;
  Rat l_gg;  // Lipschitz bound used for g o g
  std::vector<std::string> log;

  Point evaluate_g(const Point& x) const;
  Evaluable g() const;
};

}  // namespace itroots
