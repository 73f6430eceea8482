#pragma once

#include <map>
#include <optional>
#include <vector>

namespace itroots {

/// Bijective self-map of {0..k-1} as an image table.
struct Permutation {
  std::vector<int> image;

  Permutation() = default;
  explicit Permutation(std::vector<int> image_);

  int degree() const { return static_cast<int>(image.size()); }
  int operator()(int v) const { return image[v]; }
  bool operator==(const Permutation&) const = default;

  static Permutation identity(int k);
  Permutation inverse() const;
};

/// sigma after tau.
Permutation compose(const Permutation& sigma, const Permutation& tau);
Permutation power(const Permutation& sigma, long n);

/// Cycles in canonical order: each starts at its minimal element, cycles
/// sorted by that element.
std::vector<std::vector<int>> cycles_of(const Permutation& sigma);

/// counts[m] = number of m-cycles; sum of m * counts[m] is the degree.
struct CycleType {
  std::map<long, long> counts;
  long degree() const;
  bool operator==(const CycleType&) const = default;
};

CycleType cycle_type(const Permutation& sigma);

/// ((m,n)) = product over primes p dividing m of p^{e(p,n)}, where e(p,n) is
/// the exponent of p in n.
long double_bracket(long m, long n);

/// sigma has an n-th root iff counts[m] is a multiple of ((m,n)) for every m.
bool has_nth_root(const CycleType& t, long n);

/// Square-root criterion in its per-length form: every even cycle length
/// occurs an even number of times. Agrees with has_nth_root(t, 2).
bool has_square_root_even_cycle_criterion(const CycleType& t);

/// Cycle type of sigma^n: each L-cycle contributes gcd(n,L) cycles of length
/// L/gcd(n,L).
CycleType power_cycle_type(const CycleType& t, long n);

/// Builds tau with tau^n = sigma when the criterion holds: for each m the
/// m-cycles are bundled into groups of size r (r | n, gcd(n, r*m) = r) and
/// each bundle is interleaved into one (r*m)-cycle. Deterministic output.
std::optional<Permutation> construct_nth_root(const Permutation& sigma, long n);

}  // namespace itroots
