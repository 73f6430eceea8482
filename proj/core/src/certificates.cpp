#include "itroots/certificates.hpp"

#include <algorithm>

namespace itroots {

CertificateCheckReport check_no_root_certificate(const PLMap& f, const NoRootCertificate& cert) {
  CertificateCheckReport rep;

  const int sigma0_id = f.complex.simplex_id(cert.sigma0);
  const int star_id = f.complex.simplex_id(cert.sigma_star);
  const int m = f.dim();

  // Constancy: all sigma0 vertex images equal v0 (then f == v0 on sigma0 by
  // affineness), and sigma0 is a full-dimensional simplex of the complex.
  if (sigma0_id >= 0 && static_cast<int>(cert.sigma0.size()) == m + 1) {
    rep.constancy = true;
    for (int v : f.complex.simplices[sigma0_id]) {
      if (!(f.images[v] == cert.v0)) rep.constancy = false;
    }
  }

  // Displacement: f(v0) != v0, evaluated from scratch.
  try {
    Point fv0 = evaluate(f, cert.v0);
    rep.displacement = !(fv0 == cert.v0);
  } catch (const std::exception&) {
    rep.displacement = false;
  }

  // Witness piece: present, full-dimensional, distinct and vertex-disjoint
  // from sigma0 (in a proper complex that means geometrically disjoint).
  if (star_id >= 0 && star_id != sigma0_id &&
      static_cast<int>(cert.sigma_star.size()) == m + 1 && sigma0_id >= 0) {
    const auto& a = f.complex.simplices[star_id];
    const auto& b = f.complex.simplices[sigma0_id];
    bool disjoint = true;
    for (int v : a) {
      if (std::find(b.begin(), b.end(), v) != b.end()) disjoint = false;
    }
    rep.witness_simplex = disjoint;
  }

  if (rep.witness_simplex) {
    rep.witness_injective = restriction_injective(f, star_id);
    if (rep.witness_injective && sigma0_id >= 0) {
      Simplex img = image_simplex(f, star_id);
      Simplex s0 = f.complex.geometric(sigma0_id);
      rep.witness_overlap = open_simplex_contains(img, cert.witness_point) &&
                            open_simplex_contains(s0, cert.witness_point);
    }
  }

  // Injectivity ledger over every full-dimensional piece except sigma0.
  rep.ledger = true;
  for (int id : f.complex.top_ids) {
    if (id == sigma0_id) continue;
    if (!restriction_injective(f, id)) {
      rep.ledger = false;
      rep.ledger_failures.push_back(id);
    }
  }
  return rep;
}

bool verify_no_root_certificate(const PLMap& f, const NoRootCertificate& cert) {
  return check_no_root_certificate(f, cert).all();
}

Point SquareApproxResult::evaluate_g(const Point& x) const {
  if (simplex_contains(sigma0_geometric, x)) {
    return evaluate(f1, evaluate(phi, x));
  }
  return evaluate(phi, x);
}

Evaluable SquareApproxResult::g() const {
  auto self = std::make_shared<SquareApproxResult>(*this);
  return Evaluable{f1.dim(), [self](const Point& x) { return self->evaluate_g(x); }};
}

}  // namespace itroots
