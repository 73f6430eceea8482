#include "itroots/functional_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace itroots {

namespace {

// Union-find over vertex indices; components are merged along edges (v, f(v)).
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    int root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      int next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);  // smaller index wins: deterministic labels
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

FunctionalGraph::FunctionalGraph(int n_, std::vector<int> image_)
    : n(n_), image(std::move(image_)) {
  validate();
}

void FunctionalGraph::validate() const {
  if (n < 0) throw std::invalid_argument("FunctionalGraph: negative size");
  if (static_cast<int>(image.size()) != n) {
    throw std::invalid_argument("FunctionalGraph: image table length != n");
  }
  for (int v : image) {
    if (v < 0 || v >= n) throw std::invalid_argument("FunctionalGraph: image entry out of range");
  }
}

FunctionalGraph identity_graph(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  return FunctionalGraph(n, std::move(im));
}

FunctionalGraph compose(const FunctionalGraph& f, const FunctionalGraph& g) {
  if (f.n != g.n) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> im(f.n);
  for (int v = 0; v < f.n; ++v) im[v] = f.image[g.image[v]];
  return FunctionalGraph(f.n, std::move(im));
}

FunctionalGraph iterate(const FunctionalGraph& f, long k) {
  if (k < 0) throw std::invalid_argument("iterate: negative exponent");
  FunctionalGraph acc = identity_graph(f.n);
  FunctionalGraph base = f;
  while (k > 0) {
    if (k & 1) acc = compose(base, acc);
    k >>= 1;
    if (k > 0) base = compose(base, base);
  }
  return acc;
}

bool is_injective(const FunctionalGraph& f) {
  std::vector<char> seen(f.n, 0);
  for (int v : f.image) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::vector<std::vector<int>> ComponentPartition::members() const {
  std::vector<std::vector<int>> out(count);
  for (int v = 0; v < static_cast<int>(labels.size()); ++v) out[labels[v]].push_back(v);
  return out;
}

ComponentPartition components(const FunctionalGraph& f) {
  UnionFind uf(f.n);
  for (int v = 0; v < f.n; ++v) uf.unite(v, f.image[v]);
  ComponentPartition part;
  part.labels.assign(f.n, -1);
  std::map<int, int> relabel;
  for (int v = 0; v < f.n; ++v) {
    int root = uf.find(v);
    auto [it, inserted] = relabel.try_emplace(root, static_cast<int>(relabel.size()));
    part.labels[v] = it->second;
  }
  part.count = static_cast<int>(relabel.size());
  return part;
}

namespace {

// One weak component of a functional graph: its unique cycle plus, for each
// cycle vertex, the in-tree of transient vertices feeding it.
struct RhoShape {
  std::vector<int> cycle;                        // in f-order
  std::vector<std::vector<int>> tree_children;   // per vertex, non-cycle preimages, sorted
};

RhoShape analyze_component(const FunctionalGraph& f, const std::vector<int>& verts) {
  RhoShape shape;
  std::set<int> in_comp(verts.begin(), verts.end());

  // Find the cycle by walking forward until a vertex repeats.
  std::map<int, int> step_of;
  int v = verts.front();
  int steps = 0;
  while (!step_of.count(v)) {
    step_of[v] = steps++;
    v = f.image[v];
  }
  // v is the first repeated vertex; the cycle is v, f(v), ... back to v.
  int w = v;
  do {
    shape.cycle.push_back(w);
    w = f.image[w];
  } while (w != v);

  std::set<int> on_cycle(shape.cycle.begin(), shape.cycle.end());
  shape.tree_children.assign(f.n, {});
  for (int u : verts) {
    if (!on_cycle.count(u)) shape.tree_children[f.image[u]].push_back(u);
  }
  for (auto& kids : shape.tree_children) std::sort(kids.begin(), kids.end());
  return shape;
}

// AHU canonical form of the in-tree rooted at v (children = non-cycle preimages).
std::string tree_canon(const RhoShape& shape, int v) {
  std::vector<std::string> kids;
  kids.reserve(shape.tree_children[v].size());
  for (int c : shape.tree_children[v]) kids.push_back(tree_canon(shape, c));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const auto& k : kids) out += k;
  out += ")";
  return out;
}

// Pair vertices of isomorphic rooted trees, children matched by canonical form
// (ties broken by vertex id so the output is deterministic).
void match_trees(const RhoShape& s1, int v1, const RhoShape& s2, int v2,
                 std::vector<int>& phi) {
  phi[v1] = v2;
  auto key_sorted = [](const RhoShape& s, const std::vector<int>& kids) {
    std::vector<std::pair<std::string, int>> keyed;
    keyed.reserve(kids.size());
    for (int c : kids) keyed.emplace_back(tree_canon(s, c), c);
    std::sort(keyed.begin(), keyed.end());
    return keyed;
  };
  auto k1 = key_sorted(s1, s1.tree_children[v1]);
  auto k2 = key_sorted(s2, s2.tree_children[v2]);
  for (std::size_t i = 0; i < k1.size(); ++i) {
    match_trees(s1, k1[i].second, s2, k2[i].second, phi);
  }
}

}  // namespace

std::optional<std::vector<int>> component_isomorphism(const FunctionalGraph& f,
                                                      const ComponentPartition& part,
                                                      int c1, int c2) {
  if (c1 < 0 || c1 >= part.count || c2 < 0 || c2 >= part.count || c1 == c2) {
    throw std::invalid_argument("component_isomorphism: invalid component ids");
  }
  auto groups = part.members();
  const auto& verts1 = groups[c1];
  const auto& verts2 = groups[c2];
  if (verts1.size() != verts2.size()) return std::nullopt;

  RhoShape s1 = analyze_component(f, verts1);
  RhoShape s2 = analyze_component(f, verts2);
  const std::size_t L = s1.cycle.size();
  if (L != s2.cycle.size()) return std::nullopt;

  std::vector<std::string> canon1(L), canon2(L);
  for (std::size_t i = 0; i < L; ++i) {
    canon1[i] = tree_canon(s1, s1.cycle[i]);
    canon2[i] = tree_canon(s2, s2.cycle[i]);
  }

  // Anchor on the cycle: try each rotation, then match the hanging trees.
  for (std::size_t r = 0; r < L; ++r) {
    bool ok = true;
    for (std::size_t i = 0; i < L && ok; ++i) ok = canon1[i] == canon2[(i + r) % L];
    if (!ok) continue;

    std::vector<int> phi(f.n, -1);
    for (std::size_t i = 0; i < L; ++i) {
      match_trees(s1, s1.cycle[i], s2, s2.cycle[(i + r) % L], phi);
    }
    // Exhaustive commutation check; cheap and makes the result self-verifying.
    bool commutes = true;
    for (int v : verts1) {
      if (phi[v] < 0 || phi[f.image[v]] != f.image[phi[v]]) {
        commutes = false;
        break;
      }
    }
    if (commutes) return phi;
  }
  return std::nullopt;
}

FunctionalGraph square_root_two_components(const FunctionalGraph& f) {
  ComponentPartition part = components(f);
  if (part.count != 2) {
    throw std::invalid_argument(
        "square_root_two_components: graph has " + std::to_string(part.count) +
        " components, need exactly 2");
  }
  auto phi = component_isomorphism(f, part, 0, 1);
  if (!phi) {
    throw std::invalid_argument("square_root_two_components: components are not isomorphic");
  }
  std::vector<int> inv(f.n, -1);
  for (int v = 0; v < f.n; ++v) {
    if ((*phi)[v] >= 0) inv[(*phi)[v]] = v;
  }
  std::vector<int> g(f.n, -1);
  for (int v = 0; v < f.n; ++v) {
    g[v] = part.labels[v] == 0 ? (*phi)[v] : f.image[inv[v]];
  }
  return FunctionalGraph(f.n, std::move(g));
}

std::optional<FunctionalGraph> square_root_paired(const FunctionalGraph& f) {
  ComponentPartition part = components(f);
  auto groups = part.members();

  std::vector<int> g(f.n, -1);
  std::vector<int> unpaired;  // component ids awaiting a partner, per class

  // Isolated fixed points are exactly the singleton components.
  std::vector<int> nontrivial;
  for (int c = 0; c < part.count; ++c) {
    if (groups[c].size() == 1) {
      g[groups[c][0]] = groups[c][0];
    } else {
      nontrivial.push_back(c);
    }
  }

  std::vector<char> used(part.count, 0);
  for (std::size_t i = 0; i < nontrivial.size(); ++i) {
    int c1 = nontrivial[i];
    if (used[c1]) continue;
    used[c1] = 1;
    bool paired = false;
    for (std::size_t j = i + 1; j < nontrivial.size() && !paired; ++j) {
      int c2 = nontrivial[j];
      if (used[c2]) continue;
      auto phi = component_isomorphism(f, part, c1, c2);
      if (!phi) continue;
      used[c2] = 1;
      std::vector<int> inv(f.n, -1);
      for (int v : groups[c1]) inv[(*phi)[v]] = v;
      for (int v : groups[c1]) g[v] = (*phi)[v];
      for (int v : groups[c2]) g[v] = f.image[inv[v]];
      paired = true;
    }
    if (!paired) return std::nullopt;  // odd isomorphism class
  }
  return FunctionalGraph(f.n, std::move(g));
}

std::optional<T3FiniteCertificate> t3_check_finite(const FunctionalGraph& f) {
  std::vector<int> indeg(f.n, 0);
  for (int v : f.image) ++indeg[v];

  // Case (i) requires a single vertex of in-degree >= 2 and all others <= 1.
  int x0 = -1;
  for (int v = 0; v < f.n; ++v) {
    if (indeg[v] >= 2) {
      if (x0 >= 0) return std::nullopt;
      x0 = v;
    }
  }
  if (x0 < 0 || f.image[x0] == x0) return std::nullopt;

  std::vector<int> pre2;
  for (int v = 0; v < f.n; ++v) {
    if (f.image[f.image[v]] == x0) pre2.push_back(v);
  }
  if (pre2.size() <= 1) return std::nullopt;

  T3FiniteCertificate cert;
  cert.x0 = x0;
  cert.y0 = f.image[x0];
  cert.preimage2 = std::move(pre2);
  return cert;
}

bool verify_t3_certificate(const FunctionalGraph& f, const T3FiniteCertificate& cert) {
  if (cert.x0 < 0 || cert.x0 >= f.n) return false;
  if (f.image[cert.x0] != cert.y0 || cert.y0 == cert.x0) return false;

  std::vector<int> pre2;
  for (int v = 0; v < f.n; ++v) {
    if (f.image[f.image[v]] == cert.x0) pre2.push_back(v);
  }
  if (pre2 != cert.preimage2 || pre2.size() <= 1) return false;

  std::vector<int> indeg(f.n, 0);
  for (int v : f.image) ++indeg[v];
  for (int v = 0; v < f.n; ++v) {
    if (v != cert.x0 && indeg[v] > 1) return false;
  }
  return true;
}

namespace {

bool check_assigned(const std::vector<int>& g, const FunctionalGraph& f, int u) {
  int a = g[u];
  if (a < 0) return true;
  int b = g[a];
  if (b < 0) return true;
  return b == f.image[u];
}

void brute_force_rec(const FunctionalGraph& f, std::vector<int>& g, int v,
                     const BruteForceOptions& opts, std::vector<FunctionalGraph>& out) {
  if (opts.limit && out.size() >= *opts.limit) return;
  if (v == f.n) {
    out.emplace_back(f.n, g);
    return;
  }
  for (int w = 0; w < f.n; ++w) {
    g[v] = w;
    // Prune as soon as g(g(u)) is determined for any u and disagrees with f.
    bool ok = check_assigned(g, f, v);
    for (int u = 0; u < f.n && ok; ++u) {
      if (g[u] == v || g[u] == w) ok = check_assigned(g, f, u);
    }
    if (ok) brute_force_rec(f, g, v + 1, opts, out);
    g[v] = -1;
  }
}

}  // namespace

std::vector<FunctionalGraph> brute_force_square_roots(const FunctionalGraph& f,
                                                      const BruteForceOptions& opts) {
  std::vector<FunctionalGraph> out;
  if (f.n == 0) {
    out.push_back(f);
    if (opts.limit && *opts.limit == 0) out.clear();
    return out;
  }
  if (opts.pruned) {
    std::vector<int> g(f.n, -1);
    brute_force_rec(f, g, 0, opts, out);
    return out;
  }
  if (f.n > opts.guard) {
    throw std::invalid_argument("brute_force_square_roots: n exceeds guard " +
                                std::to_string(opts.guard) + "; enable pruned search");
  }
  // Odometer over all n^n image tables, lexicographic.
  std::vector<int> g(f.n, 0);
  while (true) {
    bool is_root = true;
    for (int v = 0; v < f.n && is_root; ++v) is_root = g[g[v]] == f.image[v];
    if (is_root) {
      out.emplace_back(f.n, g);
      if (opts.limit && out.size() >= *opts.limit) break;
    }
    int pos = f.n - 1;
    while (pos >= 0 && g[pos] == f.n - 1) g[pos--] = 0;
    if (pos < 0) break;
    ++g[pos];
  }
  return out;
}

}  // namespace itroots
