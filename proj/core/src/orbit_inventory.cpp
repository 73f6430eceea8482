#include "itroots/orbit_inventory.hpp"

#include <stdexcept>

namespace itroots {

OrbitInventory multiplicity_sequence(const FunctionalGraph& f) {
  if (!is_injective(f)) {
    throw std::invalid_argument("multiplicity_sequence: map is not injective");
  }
  OrbitInventory inv;
  std::vector<char> seen(f.n, 0);
  for (int v = 0; v < f.n; ++v) {
    if (seen[v]) continue;
    long len = 0;
    int w = v;
    do {
      seen[w] = 1;
      w = f.image[w];
      ++len;
    } while (w != v);
    auto [it, ok] = inv.cycles.try_emplace(len, Multiplicity::finite(0));
    ++it->second.count;
  }
  return inv;
}

bool t2a_has_square_root(const OrbitInventory& inv) {
  for (const auto& [d, m] : inv.cycles) {
    if (d % 2 == 0 && !m.even()) return false;
  }
  return inv.m_plus.even() && inv.m_bi.even();
}

OrbitInventory SymbolicOrbitSpace::inventory() const {
  OrbitInventory inv;
  for (const auto& o : orbits) {
    switch (o.kind) {
      case OrbitKind::Cycle: {
        auto [it, ok] = inv.cycles.try_emplace(o.cycle_len, Multiplicity::finite(0));
        ++it->second.count;
        break;
      }
      case OrbitKind::Unilateral:
        ++inv.m_plus.count;
        break;
      case OrbitKind::Bilateral:
        ++inv.m_bi.count;
        break;
    }
  }
  return inv;
}

OrbitAddress canonical_successor(const SymbolicOrbitSpace& space, const OrbitAddress& a) {
  const SymbolicOrbit& o = space.orbits.at(a.orbit);
  long next = a.index + 1;
  if (o.kind == OrbitKind::Cycle) next %= o.cycle_len;
  return {a.orbit, next};
}

OrbitAddress OrbitRootRule::apply(const SymbolicOrbitSpace& space, const OrbitAddress& a) const {
  const int t = target.at(a.orbit);
  const SymbolicOrbit& dest = space.orbits.at(t);
  long idx = a.index + shift.at(a.orbit);
  if (dest.kind == OrbitKind::Cycle) idx = ((idx % dest.cycle_len) + dest.cycle_len) % dest.cycle_len;
  return {t, idx};
}

OrbitRootRule t2a_construct_root(const SymbolicOrbitSpace& space) {
  OrbitInventory inv = space.inventory();
  for (const auto& [d, m] : inv.cycles) {
    if (d % 2 == 0 && !m.even()) {
      throw std::invalid_argument("t2a_construct_root: odd number of " + std::to_string(d) +
                                  "-cycles");
    }
  }
  if (!inv.m_plus.even()) {
    throw std::invalid_argument("t2a_construct_root: odd number of unilateral orbits");
  }
  if (!inv.m_bi.even()) {
    throw std::invalid_argument("t2a_construct_root: odd number of bilateral orbits");
  }

  const int n = static_cast<int>(space.orbits.size());
  OrbitRootRule rule;
  rule.target.assign(n, -1);
  rule.shift.assign(n, 0);

  // Group orbits needing a partner: even cycles by length, shifts, translations.
  std::map<long, std::vector<int>> even_cycles;
  std::vector<int> unilateral, bilateral;
  for (int i = 0; i < n; ++i) {
    const SymbolicOrbit& o = space.orbits[i];
    if (o.kind == OrbitKind::Cycle) {
      if (o.cycle_len % 2 == 1) {
        rule.target[i] = i;
        rule.shift[i] = (o.cycle_len + 1) / 2;
      } else {
        even_cycles[o.cycle_len].push_back(i);
      }
    } else if (o.kind == OrbitKind::Unilateral) {
      unilateral.push_back(i);
    } else {
      bilateral.push_back(i);
    }
  }

  // Pairing construction: g maps the first orbit onto the second index-wise
  // and the second back with one extra step, so g o g advances by one.
  auto pair_up = [&rule](const std::vector<int>& ids) {
    for (std::size_t i = 0; i + 1 < ids.size(); i += 2) {
      rule.target[ids[i]] = ids[i + 1];
      rule.shift[ids[i]] = 0;
      rule.target[ids[i + 1]] = ids[i];
      rule.shift[ids[i + 1]] = 1;
    }
  };
  for (auto& [d, ids] : even_cycles) pair_up(ids);
  pair_up(unilateral);
  pair_up(bilateral);
  return rule;
}

}  // namespace itroots
