#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace itroots {

/// A self-map of {0..n-1} presented as its image table. Viewing the map as a
/// directed graph with edges (v, image[v]) gives the orbit structure used by
/// every operation below.
struct FunctionalGraph {
  int n = 0;
  std::vector<int> image;

  FunctionalGraph() = default;
  FunctionalGraph(int n_, std::vector<int> image_);

  int operator()(int v) const { return image[v]; }
  bool operator==(const FunctionalGraph&) const = default;

  /// Throws std::invalid_argument if any entry is out of range.
  void validate() const;
};

FunctionalGraph identity_graph(int n);

/// f after g: returns v -> f(g(v)).
FunctionalGraph compose(const FunctionalGraph& f, const FunctionalGraph& g);

/// k-fold composition; iterate(f, 0) is the identity table.
FunctionalGraph iterate(const FunctionalGraph& f, long k);

bool is_injective(const FunctionalGraph& f);

/// Partition of the vertex set into weakly connected components. Two vertices
/// share a component exactly when some forward iterates of them collide.
struct ComponentPartition {
  std::vector<int> labels;  // labels[v] in 0..count-1, gap-free
  int count = 0;

  std::vector<std::vector<int>> members() const;
};

ComponentPartition components(const FunctionalGraph& f);

/// Graph isomorphism between two components: a bijection phi with
/// phi(f(x)) = f(phi(x)). Returned as a full-length table with -1 outside c1.
/// Empty optional means the components are not isomorphic.
std::optional<std::vector<int>> component_isomorphism(const FunctionalGraph& f,
                                                      const ComponentPartition& part,
                                                      int c1, int c2);

/// Square root g (g(g(v)) = f(v)) for a map whose graph has exactly two
/// isomorphic components: g maps C1 to C2 by phi and C2 back by f o phi^{-1}.
/// Throws std::invalid_argument naming the violated clause otherwise.
FunctionalGraph square_root_two_components(const FunctionalGraph& f);

/// Square root when every isomorphism class of components, excluding isolated
/// fixed points, has even cardinality (isolated fixed points map to
/// themselves). Empty optional when the sufficient condition fails; that is
/// not a proof of non-existence.
std::optional<FunctionalGraph> square_root_paired(const FunctionalGraph& f);

/// Witness that f has no square root at all: a vertex x0 with f(x0) != x0,
/// more than one second preimage, while every other vertex has at most one
/// preimage. All witness sets are stored explicitly.
struct T3FiniteCertificate {
  int x0 = -1;
  int y0 = -1;                 // f(x0)
  std::vector<int> preimage2;  // f^{-2}(x0), size > 1
  std::string case_tag = "CaseI";
};

/// Scans for a vertex satisfying the certificate conditions exactly.
/// Absence only means no such vertex exists; it says nothing about roots.
std::optional<T3FiniteCertificate> t3_check_finite(const FunctionalGraph& f);

/// Re-checks a certificate against f from scratch.
bool verify_t3_certificate(const FunctionalGraph& f, const T3FiniteCertificate& cert);

struct BruteForceOptions {
  int guard = 6;        // full enumeration allowed up to n^n with n <= guard
  bool pruned = false;  // backtracking that prunes on g(g(v)) != f(v)
  std::optional<std::size_t> limit;
};

/// Exactly the set {g : g o g = f}, in lexicographic order of the image
/// table (both modes produce the same order). Throws when n exceeds the
/// guard and pruning is off.
std::vector<FunctionalGraph> brute_force_square_roots(const FunctionalGraph& f,
                                                      const BruteForceOptions& opts = {});

}  // namespace itroots
