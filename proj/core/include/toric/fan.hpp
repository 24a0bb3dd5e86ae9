#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toric/exact.hpp"

namespace toric {

using Cone = std::vector<std::size_t>;  // sorted indices into Fan::rays

/// A fan stored by its maximal cones. Rays are primitive lattice vectors.
struct Fan {
  std::size_t rank = 0;
  std::vector<LatticeVector> rays;
  std::vector<Cone> max_cones;

  std::vector<RationalPoint> cone_generators(const Cone& c) const;
  std::size_t ray_index(const LatticeVector& v) const;  // rays.size() when absent
  bool operator==(const Fan& other) const;
};

/// Rays sorted lexicographically, cones sorted, unused rays dropped.
Fan canonical(const Fan& f);

/// One-line text form for diagnostics.
std::string describe(const Fan& f);

struct FanDiagnostics {
  bool valid = true;
  std::string message;
  std::optional<std::pair<std::size_t, std::size_t>> violating_pair;
};

/// Checks primitivity, strong convexity and the face/intersection conditions
/// (via a separating hyperplane for every pair of maximal cones).
FanDiagnostics validate_fan(const Fan& f);

bool is_complete(const Fan& f);
bool is_simplicial(const Fan& f);

/// A codimension-one cone shared by two maximal cones of a complete simplicial
/// fan, with its primitive linear relation: sum_r relation[r] * rays[r] = 0,
/// supported on the two cones, positive on the two rays off the wall.
struct Wall {
  Cone face;
  std::size_t cone_a = 0, cone_b = 0;
  std::size_t ray_a = 0, ray_b = 0;
  LatticeVector relation;
};

/// Walls of a complete simplicial fan. Throws InputError otherwise.
std::vector<Wall> walls(const Fan& f);

struct ProjectivityCertificate {
  std::optional<RationalPoint> ample_divisor;  // strictly convex support data
  std::optional<RationalPoint> farkas;         // multipliers over the walls
  bool projective() const { return ample_divisor.has_value(); }
};

/// Searches for a divisor positive on every wall curve. Requires a complete
/// simplicial fan (InputError otherwise).
ProjectivityCertificate is_projective(const Fan& f);

/// Dimension of the space of piecewise-linear functions on the fan modulo M.
/// For complete simplicial fans this is #rays - rank.
std::size_t picard_number(const Fan& f);

/// A toric variety together with the lattice map from the base lattice
/// (identity for birational models, a projection for fiber-type images).
struct ToricModel {
  Fan fan;
  IntMatrix lattice_map;  // fan.rank x base rank

  std::size_t base_rank() const;
  bool birational() const;  // identity lattice map
  bool operator==(const ToricModel& other) const;
};

/// Canonicalizes the fan; the lattice map must already be in Hermite form.
ToricModel make_model(const Fan& f, IntMatrix lattice_map);
ToricModel birational_model(const Fan& f);

/// Stable textual key for model equality / hashing.
std::string model_key(const ToricModel& m);

struct FanMorphism {
  enum class Kind { refinement, projection, mixed };
  ToricModel source;
  ToricModel target;
  IntMatrix lattice_map;  // target rank x source rank
  Kind kind = Kind::mixed;
};

/// Verifies that every source cone maps into a target cone and classifies the
/// map; nullopt when the cone condition fails.
std::optional<FanMorphism> make_morphism(const ToricModel& source, const ToricModel& target,
                                         const IntMatrix& lattice_map);

/// Index of a maximal cone containing x, nullopt when x is outside the support.
std::optional<std::size_t> locate(const Fan& f, const RationalPoint& x);

struct Refinement {
  Fan fan;
  FanMorphism to_a;
  FanMorphism to_b;
};

/// Fan of pairwise intersections, triangulated by pulling in lexicographic ray
/// order. Both inputs must be complete fans of the same rank.
Refinement common_refinement(const Fan& a, const Fan& b);

/// Star subdivision at a primitive vector of the support.
Fan star_subdivision(const Fan& f, const LatticeVector& v);

/// Product fan in the direct sum lattice.
Fan product(const Fan& a, const Fan& b);

}  // namespace toric
