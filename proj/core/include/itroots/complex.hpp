#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "itroots/geometry.hpp"

namespace itroots {

/// Cell-bucket acceleration for uniform-grid complexes: cell id maps to the
/// top-dimensional simplices contained in that cell.
struct GridIndex {
  int r = 0;
  std::vector<std::vector<int>> cell_tops;
};

/// Finite simplicial complex with exact rational vertices. Stores every face
/// of every generator (face-closed by construction); simplices are sorted
/// vertex-index tuples. Proper pairwise intersections hold for all the
/// constructions in this library and can be re-checked with
/// validate_complex on small inputs.
class SimplicialComplex {
 public:
  int dim = 0;                                // ambient dimension m
  std::vector<Point> vertices;
  std::vector<std::vector<int>> simplices;    // id -> sorted tuple
  std::vector<int> maximal_ids;               // generators, not faces of others
  std::vector<int> top_ids;                   // ids of dimension-m simplices
  std::optional<GridIndex> grid;

  /// Builds the face closure of the given maximal tuples. Generators that
  /// are faces of other generators are dropped from maximal_ids.
  static SimplicialComplex from_maximal(int dim, std::vector<Point> vertices,
                                        std::vector<std::vector<int>> maximal);

  bool empty() const { return simplices.empty(); }
  std::size_t size() const { return simplices.size(); }

  /// -1 when the tuple is not a simplex of the complex.
  int simplex_id(std::vector<int> tuple) const;
  bool has_simplex(std::vector<int> tuple) const { return simplex_id(std::move(tuple)) >= 0; }

  Simplex geometric(int id) const;
  Simplex geometric_of(const std::vector<int>& tuple) const;

  bool operator==(const SimplicialComplex& other) const {
    return dim == other.dim && vertices == other.vertices && simplices == other.simplices;
  }

 private:
  struct TupleHash {
    std::size_t operator()(const std::vector<int>& t) const {
      std::size_t h = 1469598103934665603ull;
      for (int v : t) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return h;
    }
  };
  std::unordered_map<std::vector<int>, int, TupleHash> registry_;

  friend SimplicialComplex replace_top_simplex(const SimplicialComplex&, int,
                                               const SimplicialComplex&);
};

/// Kuhn (Freudenthal) triangulation of the unit cube [0,1]^m at grid
/// resolution r: each of the r^m cells splits into m! simplices along
/// coordinate orderings. Carrier is exactly the cube, mesh is 1/r, and
/// pairwise intersections are proper by construction.
SimplicialComplex kuhn_triangulation(int m, int r);

/// First barycentric subdivision: vertices are barycentres of all simplices,
/// simplices are chains of proper faces. Carrier is preserved.
SimplicialComplex barycentric_subdivision(const SimplicialComplex& k);

/// Max simplex diameter under the sup norm. Throws on an empty complex.
Rat mesh(const SimplicialComplex& k);

/// Exact total m-volume of the top-dimensional simplices.
Rat total_volume(const SimplicialComplex& k);

/// Triangulates sigma with z as an extra vertex: if z is interior to the
/// face spanned by k+1 vertices, the result has k+1 full simplices, each
/// replacing one of those vertices by z. Throws when z is outside sigma or
/// already a vertex.
SimplicialComplex insert_vertex(const Simplex& sigma, const Point& z);

/// Id of the unique simplex whose open face contains x. Exact arithmetic
/// makes boundary cases unambiguous. Throws when x is outside the carrier.
int locate(const SimplicialComplex& k, const Point& x);

/// Id of some top-dimensional simplex whose closure contains x, or -1.
int locate_top(const SimplicialComplex& k, const Point& x);

/// All top-dimensional simplices meeting sigma0 (sharing a vertex; in a
/// proper complex that is exactly geometric intersection), including itself.
std::vector<int> star(const SimplicialComplex& k, const std::vector<int>& sigma0_tuple);

/// O(s^2) proper-intersection check over top simplices; intended for debug
/// use and small complexes. Throws std::invalid_argument when the pair count
/// exceeds max_pairs.
bool validate_complex(const SimplicialComplex& k, std::size_t max_pairs = 4'000'000);

/// Replaces one top simplex by a local complex triangulating it. The local
/// complex must leave the boundary faces of the replaced simplex intact;
/// its copies of the original vertices are matched by exact coordinates.
SimplicialComplex replace_top_simplex(const SimplicialComplex& k, int top_id,
                                      const SimplicialComplex& local);

/// floor(x * r) clamped to [0, r-1]; cell coordinate of a point.
long grid_cell_coord(const Rat& x, int r);

}  // namespace itroots
