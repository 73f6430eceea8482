#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace itroots {

/// Exact rational scalar. All geometry in this library is computed over Rat;
/// no floating point enters any predicate or certificate.
using Rat = mpq_class;

/// Parses "p/q" (or a bare integer "p") into a canonical rational.
/// Throws std::invalid_argument on malformed input or zero denominator.
Rat rat_from_string(const std::string& s);

/// Canonical string form "p/q" in lowest terms, sign on p, q >= 1.
/// Integers are emitted as "p/1" so the format is uniform.
std::string rat_to_string(const Rat& q);

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// Rat(p, q) with canonicalization in one step.
Rat make_rat(long p, long q);

double rat_to_double(const Rat& q);

/// Deterministic source of bounded-denominator rationals.
///
/// Samples are of the form lo + (hi-lo) * k / 2^log2_den with k uniform in
/// [0, 2^log2_den], so a fixed seed reproduces runs bit-exactly.
class RatRng {
 public:
  explicit RatRng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform rational in the closed interval [lo, hi].
  Rat uniform(const Rat& lo, const Rat& hi, unsigned log2_den = 20);

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n);

 private:
  std::mt19937_64 eng_;
};

}  // namespace itroots
