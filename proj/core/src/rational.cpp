#include "itroots/rational.hpp"

#include <stdexcept>

namespace itroots {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rational: empty string");
  mpq_class q;
  if (q.set_str(s, 10) != 0) {
    throw std::invalid_argument("rational: malformed '" + s + "'");
  }
  if (q.get_den() == 0) {
    throw std::invalid_argument("rational: zero denominator in '" + s + "'");
  }
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat make_rat(long p, long q) {
  if (q == 0) throw std::invalid_argument("rational: zero denominator");
  Rat r(p, q);
  r.canonicalize();
  return r;
}

double rat_to_double(const Rat& q) { return q.get_d(); }

Rat RatRng::uniform(const Rat& lo, const Rat& hi, unsigned log2_den) {
  if (hi < lo) throw std::invalid_argument("RatRng::uniform: hi < lo");
  const std::uint64_t den = std::uint64_t{1} << log2_den;
  const std::uint64_t k = uniform_index(den + 1);
  Rat t(static_cast<unsigned long>(k), static_cast<unsigned long>(den));
  t.canonicalize();
  return lo + (hi - lo) * t;
}

std::uint64_t RatRng::uniform_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("RatRng::uniform_index: n == 0");
  // Rejection sampling keeps the distribution exact and the stream portable.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
  std::uint64_t v;
  do {
    v = eng_();
  } while (v >= limit);
  return v % n;
}

}  // namespace itroots
