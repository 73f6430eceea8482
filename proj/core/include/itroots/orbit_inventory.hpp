#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "itroots/functional_graph.hpp"

namespace itroots {

/// A cardinal count that may be the distinguished infinite marker. The
/// convention throughout: the empty set and all infinite sets count as even.
struct Multiplicity {
  bool infinite = false;
  unsigned long count = 0;

  static Multiplicity finite(unsigned long c) { return {false, c}; }
  static Multiplicity infinity_marker() { return {true, 0}; }

  bool even() const { return infinite || count % 2 == 0; }
  bool zero() const { return !infinite && count == 0; }
  bool operator==(const Multiplicity&) const = default;
};

/// Multiplicity sequence (m_1, m_2, ..., m_+, m) of an injective map:
/// cycles[d] counts d-cycle orbits, m_plus unilateral-shift orbits, m_bi
/// bilateral-translation orbits. Determines the map up to bijective
/// correspondence.
struct OrbitInventory {
  std::map<long, Multiplicity> cycles;
  Multiplicity m_plus = Multiplicity::finite(0);
  Multiplicity m_bi = Multiplicity::finite(0);

  bool operator==(const OrbitInventory&) const = default;
};

/// Cycle counts of an injective finite map (m_plus = m_bi = 0).
/// Throws std::invalid_argument if f is not injective.
OrbitInventory multiplicity_sequence(const FunctionalGraph& f);

/// Injective maps have a square root exactly when every even-length cycle
/// count, m_plus and m_bi are even (infinite counts as even).
bool t2a_has_square_root(const OrbitInventory& inv);

enum class OrbitKind { Cycle, Unilateral, Bilateral };

/// An abstract orbit: indices live in Z_d, Z_+ or Z depending on the kind.
struct SymbolicOrbit {
  OrbitKind kind = OrbitKind::Cycle;
  long cycle_len = 1;  // meaningful for Cycle only
};

/// An injective map up to bijective correspondence: a finite list of orbits.
/// The canonical map sends (orbit, k) to (orbit, k+1), mod d on cycles.
struct SymbolicOrbitSpace {
  std::vector<SymbolicOrbit> orbits;

  OrbitInventory inventory() const;
};

struct OrbitAddress {
  int orbit = 0;
  long index = 0;
  bool operator==(const OrbitAddress&) const = default;
};

OrbitAddress canonical_successor(const SymbolicOrbitSpace& space, const OrbitAddress& a);

/// A finite program computing a square root of the canonical map:
/// g(orbit, k) = (target[orbit], k + shift[orbit]), reduced mod d on cycles.
struct OrbitRootRule {
  std::vector<int> target;
  std::vector<long> shift;

  OrbitAddress apply(const SymbolicOrbitSpace& space, const OrbitAddress& a) const;
};

/// Builds the root rule: odd cycles get the (d+1)/2 shift, even cycles and
/// shift/translation orbits are paired and interleaved. Throws, identifying
/// the offending count, when the T2A criterion fails.
OrbitRootRule t2a_construct_root(const SymbolicOrbitSpace& space);

}  // namespace itroots
