#pragma once

#include <string>
#include <vector>

#include "toric/fan.hpp"

namespace toric::catalog {

Fan projective_line();
Fan projective_plane();
/// F_a with rays (1,0), (0,1), (-1,a), (0,-1).
Fan hirzebruch(int a);
/// P^2 blown up at two torus-fixed points.
Fan blowup_plane_two_points();
Fan p1_x_p1();
/// P(1,1,2) with rays (1,0), (0,1), (-1,-2).
Fan weighted_p112();
Fan p1_cubed();

/// Normal fan of the square pyramid (non-simplicial apex cone) and its two
/// small resolutions S and T, related by a flop.
Fan pyramid();
Fan pyramid_small_s();
Fan pyramid_small_t();
/// Common resolution of S and T: star subdivision at (0,0,-1).
Fan pyramid_resolved();

/// Complete simplicial 3-fold fan with no strictly convex support function.
Fan twisted_prism();

struct Entry {
  std::string name;
  Fan fan;
};

/// Projective Q-factorial fans used by randomized tests and benchmarks.
std::vector<Entry> corpus();

/// Looks a fan up by corpus name (also accepts the fixture names); throws
/// InputError for unknown names.
Fan by_name(const std::string& name);
std::vector<std::string> names();

}  // namespace toric::catalog
