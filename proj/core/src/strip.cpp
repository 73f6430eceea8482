#include <stdexcept>

#include "itroots/constructions.hpp"

namespace itroots {

Point StripExample::target(const Point& xy) const {
  return Point({1 - xy.coords[0], Rat(1, 2)});
}

Point StripExample::g1(const Point& xy) const {
  // Quarter turn of the strip with scaling: stays inside the strip.
  const Rat& x = xy.coords[0];
  const Rat& y = xy.coords[1];
  return Point({Rat(1, 2) + (2 * y - 1) / (2 * eps), Rat(1, 2) - eps * (2 * x - 1) / 2});
}

Point StripExample::g2(const Point& xy) const {
  const Rat lo = Rat(1, 2) - eps / 2;
  const Rat hi = Rat(1, 2) + eps / 2;
  Rat y = xy.coords[1];
  if (y < lo) y = lo;
  if (y > hi) y = hi;
  return Point({xy.coords[0], y});
}

Point StripExample::g(const Point& xy) const { return g1(g2(xy)); }

Point StripExample::g_squared_formula(const Point& xy) const {
  const Rat lo = Rat(1, 2) - eps / 2;
  const Rat hi = Rat(1, 2) + eps / 2;
  const Rat& x = xy.coords[0];
  const Rat& y = xy.coords[1];
  if (y <= lo) return Point({1 - x, hi});
  if (y >= hi) return Point({1 - x, lo});
  return Point({1 - x, 1 - y});
}

StripExample strip_rotation_example(const Rat& eps) {
  if (eps <= 0 || eps >= Rat(1, 2)) {
    throw std::invalid_argument("strip_rotation_example: need 0 < eps < 1/2");
  }
  StripExample ex;
  ex.eps = eps;
  // Piecewise exact sup of |target - g o g|: the outer strips contribute the
  // constant eps/2 and the middle strip |y - 1/2| <= eps/2, attained at the
  // strip edges. Hence the sup equals eps/2.
  ex.exact_sup = eps / 2;
  return ex;
}

}  // namespace itroots
