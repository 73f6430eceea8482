#include "itroots/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace itroots {

Permutation::Permutation(std::vector<int> image_) : image(std::move(image_)) {
  std::vector<char> seen(image.size(), 0);
  for (int v : image) {
    if (v < 0 || v >= degree() || seen[v]) {
      throw std::invalid_argument("Permutation: image table is not a bijection");
    }
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int k) {
  std::vector<int> im(k);
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(image.size());
  for (int v = 0; v < degree(); ++v) inv[image[v]] = v;
  return Permutation(std::move(inv));
}

Permutation compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.degree() != tau.degree()) throw std::invalid_argument("compose: degree mismatch");
  std::vector<int> im(sigma.degree());
  for (int v = 0; v < sigma.degree(); ++v) im[v] = sigma.image[tau.image[v]];
  return Permutation(std::move(im));
}

Permutation power(const Permutation& sigma, long n) {
  if (n < 0) throw std::invalid_argument("power: negative exponent");
  Permutation acc = Permutation::identity(sigma.degree());
  Permutation base = sigma;
  while (n > 0) {
    if (n & 1) acc = compose(base, acc);
    n >>= 1;
    if (n > 0) base = compose(base, base);
  }
  return acc;
}

std::vector<std::vector<int>> cycles_of(const Permutation& sigma) {
  std::vector<std::vector<int>> cycles;
  std::vector<char> seen(sigma.degree(), 0);
  for (int v = 0; v < sigma.degree(); ++v) {
    if (seen[v]) continue;
    std::vector<int> cyc;
    int w = v;
    do {
      seen[w] = 1;
      cyc.push_back(w);
      w = sigma.image[w];
    } while (w != v);
    cycles.push_back(std::move(cyc));
  }
  return cycles;  // already ordered by minimal element = first visit
}

long CycleType::degree() const {
  long d = 0;
  for (const auto& [m, c] : counts) d += m * c;
  return d;
}

CycleType cycle_type(const Permutation& sigma) {
  CycleType t;
  for (const auto& cyc : cycles_of(sigma)) t.counts[static_cast<long>(cyc.size())]++;
  return t;
}

long double_bracket(long m, long n) {
  if (m < 1 || n < 1) throw std::invalid_argument("double_bracket: arguments must be >= 1");
  long result = 1;
  long rest = m;
  for (long p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    long q = n;
    while (q % p == 0) {
      q /= p;
      result *= p;
    }
  }
  if (rest > 1) {
    long p = rest;
    long q = n;
    while (q % p == 0) {
      q /= p;
      result *= p;
    }
  }
  return result;
}

bool has_nth_root(const CycleType& t, long n) {
  if (n < 1) throw std::invalid_argument("has_nth_root: n must be >= 1");
  for (const auto& [m, c] : t.counts) {
    if (c % double_bracket(m, n) != 0) return false;
  }
  return true;
}

bool has_square_root_even_cycle_criterion(const CycleType& t) {
  for (const auto& [m, c] : t.counts) {
    if (m % 2 == 0 && c % 2 != 0) return false;
  }
  return true;
}

CycleType power_cycle_type(const CycleType& t, long n) {
  if (n < 1) throw std::invalid_argument("power_cycle_type: n must be >= 1");
  CycleType out;
  for (const auto& [L, c] : t.counts) {
    long g = std::gcd(n, L);
    out.counts[L / g] += c * g;
  }
  return out;
}

namespace {

// Bundle sizes r with r | n and gcd(n, r*m) = r, increasing.
std::vector<long> valid_bundle_sizes(long m, long n) {
  std::vector<long> out;
  for (long r = 1; r <= n; ++r) {
    if (n % r == 0 && std::gcd(n, r * m) == r) out.push_back(r);
  }
  return out;
}

bool bundle_counts(long remaining, const std::vector<long>& sizes, std::vector<long>& chosen) {
  if (remaining == 0) return true;
  for (long r : sizes) {
    if (r > remaining) break;
    chosen.push_back(r);
    if (bundle_counts(remaining - r, sizes, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

long mod_inverse(long a, long m) {
  // Extended Euclid; gcd(a, m) = 1 is guaranteed by the bundle-size condition.
  long t = 0, new_t = 1, r = m, new_r = a % m;
  while (new_r != 0) {
    long q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  return ((t % m) + m) % m;
}

}  // namespace

std::optional<Permutation> construct_nth_root(const Permutation& sigma, long n) {
  CycleType t = cycle_type(sigma);
  if (!has_nth_root(t, n)) return std::nullopt;

  std::vector<int> tau(sigma.degree(), -1);

  // Group canonical cycles by length; consume each group into bundles.
  std::map<long, std::vector<std::vector<int>>> by_len;
  for (auto& cyc : cycles_of(sigma)) by_len[static_cast<long>(cyc.size())].push_back(cyc);

  for (auto& [m, group] : by_len) {
    auto sizes = valid_bundle_sizes(m, n);
    std::vector<long> chosen;
    if (!bundle_counts(static_cast<long>(group.size()), sizes, chosen)) {
      return std::nullopt;  // cannot happen when the criterion holds
    }
    std::size_t next = 0;
    for (long r : chosen) {
      // Interleave r cycles of length m into one (r*m)-cycle of tau:
      // slot t = q*r + s holds cycle_s[(q*w) mod m] with w = (n/r)^{-1} mod m,
      // so advancing n slots applies sigma once.
      const long w = m == 1 ? 0 : mod_inverse((n / r) % m, m);
      std::vector<int> slot(static_cast<std::size_t>(r * m));
      for (long s = 0; s < r; ++s) {
        const std::vector<int>& cyc = group[next + s];
        for (long q = 0; q < m; ++q) {
          slot[static_cast<std::size_t>(q * r + s)] = cyc[static_cast<std::size_t>((q * w) % m)];
        }
      }
      for (std::size_t i = 0; i < slot.size(); ++i) {
        tau[slot[i]] = slot[(i + 1) % slot.size()];
      }
      next += static_cast<std::size_t>(r);
    }
  }
  return Permutation(std::move(tau));
}

}  // namespace itroots
