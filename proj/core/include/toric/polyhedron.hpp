#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toric/exact.hpp"

namespace toric {

/// <normal, x> >= offset
struct Inequality {
  RationalPoint normal;
  Rational offset;
};

struct VRepresentation {
  std::vector<RationalPoint> vertices;
  std::vector<RationalPoint> rays;   // recession rays, integral directions
  std::vector<RationalPoint> lines;  // lineality basis

  bool empty() const { return vertices.empty(); }
  /// Dimension of the affine hull; -1 for the empty set.
  int dimension(std::size_t ambient) const;
};

struct Polyhedron {
  std::size_t dim = 0;
  std::vector<Inequality> inequalities;
  /// Filled in by `with_vrep`.
  std::optional<VRepresentation> vrep;

  bool contains(const RationalPoint& x) const;
  /// Every inequality strict at x.
  bool strictly_contains(const RationalPoint& x) const;
  Polyhedron with_vrep() const;
};

struct LpResult {
  std::optional<RationalPoint> point;   // feasible point
  std::optional<RationalPoint> farkas;  // y >= 0, y^T A = 0, y^T b > 0
  bool feasible() const { return point.has_value(); }
};

/// Exact feasibility of an H-representation. Returns a point or a Farkas
/// certificate of emptiness; one of the two is always present.
LpResult lp_feasible(const Polyhedron& p);

/// Nonnegative solution of A y = b (standard form), by exact phase-one simplex
/// with Bland's rule.
std::optional<RationalPoint> nonnegative_solution(const RatMatrix& a, const RationalPoint& b,
                                                  std::size_t cols);

/// Double-description vertex enumeration with inequalities inserted in input
/// order. Output lists are sorted lexicographically.
VRepresentation vertex_enumeration(const Polyhedron& p);

/// Extreme rays and lineality of {x : <a_i, x> >= 0}.
struct ConeGenerators {
  std::vector<RationalPoint> rays;
  std::vector<RationalPoint> lines;
};
ConeGenerators cone_generators(const std::vector<RationalPoint>& normals, std::size_t dim);

/// Facet description of cone(generators): inequalities <y, x> >= 0, plus equalities
/// (returned as opposite inequality pairs) when the cone is not full-dimensional.
std::vector<RationalPoint> cone_inequalities(const std::vector<RationalPoint>& generators,
                                             std::size_t dim);

/// Indices of generators spanning an extreme ray of cone(generators).
/// Generators must be nonzero and the cone pointed.
std::vector<std::size_t> extreme_generators(const std::vector<RationalPoint>& generators,
                                            std::size_t dim);

/// Subsets of generator indices forming the facets of cone(generators).
std::vector<std::vector<std::size_t>> cone_facets(const std::vector<RationalPoint>& generators,
                                                  std::size_t dim);

/// Is x in cone(generators)?
bool cone_contains(const std::vector<RationalPoint>& generators, const RationalPoint& x);

// ---------------------------------------------------------------------------
// Planar helpers.

/// Counter-clockwise convex hull, collinear points removed.
std::vector<RationalPoint> convex_hull_2d(std::vector<RationalPoint> points);

/// Signed area (positive for counter-clockwise order).
Rational polygon_area(const std::vector<RationalPoint>& ccw);

/// H-representation of the convex hull of the points (any dimension 0..2).
Polyhedron hull_polyhedron_2d(const std::vector<RationalPoint>& points);

/// a*s + b*t + c = 0
struct Line2 {
  Rational a, b, c;
  Rational eval(const RationalPoint& p) const { return a * p[0] + b * p[1] + c; }
};

/// Integral, sign-normalized coefficients; nullopt for degenerate lines.
std::optional<Line2> normalize_line(const Line2& line);

struct ArrangementEdge {
  std::size_t v0 = 0, v1 = 0;           // vertex indices
  std::vector<std::size_t> cells;      // one (boundary) or two (interior)
  bool on_boundary() const { return cells.size() == 1; }
};

struct ArrangementCell {
  std::vector<std::size_t> vertices;   // counter-clockwise
  RationalPoint interior_point;        // average of the vertices
  Rational area;
};

struct Arrangement {
  std::vector<RationalPoint> vertices;
  std::vector<ArrangementEdge> edges;
  std::vector<ArrangementCell> cells;

  std::size_t interior_edge_count() const;
  std::size_t interior_vertex_count() const;
};

/// Subdivision of a bounded 2D region by lines. Each cell is convex and carries
/// an exact interior point; T-junctions are resolved so edges are shared exactly.
Arrangement line_arrangement_2d(const std::vector<Line2>& lines, const Polyhedron& region);

/// Same, for a region already given as a counter-clockwise polygon.
Arrangement line_arrangement_2d(const std::vector<Line2>& lines,
                                const std::vector<RationalPoint>& region_ccw);

}  // namespace toric
