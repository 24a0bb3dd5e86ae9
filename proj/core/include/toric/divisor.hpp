#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/fan.hpp"
#include "toric/polyhedron.hpp"

namespace toric {

/// Coefficient d_rho per ray of the fan. K_X has every coefficient -1.
using TorusDivisor = RationalPoint;

TorusDivisor canonical_divisor(const Fan& f);
TorusDivisor zero_divisor(const Fan& f);
/// div(chi^m): coefficient <m, v_rho> on each ray.
TorusDivisor principal_divisor(const Fan& f, const RationalPoint& m);

/// Cartier data: one m_sigma per maximal cone with <m_sigma, v_rho> = -d_rho on
/// the rays of sigma.
struct SupportFunction {
  std::vector<RationalPoint> m;

  /// psi(x) = <m_sigma, x> for a cone containing x.
  Rational operator()(const Fan& f, const RationalPoint& x) const;
};

/// Throws InputError "divisor not R-Cartier on non-simplicial cone" when a
/// non-simplicial cone admits no solution.
SupportFunction support_function(const Fan& f, const TorusDivisor& d);

/// Linear functional over ray coefficients equal to D -> <m_{sigma_a}, v_b> + d_b,
/// i.e. relation / c_b.
RationalPoint intersection_functional(const Fan& f, const Wall& w);
/// The same quantity evaluated literally from Cartier data.
Rational intersection_value(const Fan& f, const Wall& w, const TorusDivisor& d);

bool is_nef(const Fan& f, const TorusDivisor& d);
bool is_ample(const Fan& f, const TorusDivisor& d);

/// Convexity oracles: every m_sigma lies in P_D (nef), strictly off the rays
/// outside sigma (ample). Work on non-simplicial complete fans as well.
bool is_nef_by_convexity(const Fan& f, const TorusDivisor& d);
bool is_ample_by_convexity(const Fan& f, const TorusDivisor& d);

/// P_D = { m : <m, v_rho> >= -d_rho }.
Polyhedron section_polytope(const Fan& f, const TorusDivisor& d);
bool is_pseudo_effective(const Fan& f, const TorusDivisor& d);
bool is_big(const Fan& f, const TorusDivisor& d);

/// Coordinates in N^1 against a fixed integral basis of the ray relations.
struct NumericalClass {
  RationalPoint coords;
  bool operator==(const NumericalClass&) const = default;
};
NumericalClass numerical_class(const Fan& f, const TorusDivisor& d);
std::vector<LatticeVector> relation_basis(const Fan& f);

/// m with d'_rho = d_rho + <m, v_rho>, if any.
std::optional<RationalPoint> r_linear_equiv(const Fan& f, const TorusDivisor& d,
                                            const TorusDivisor& d2);

enum class PairSingularity { klt, lc, not_certified };
std::string to_string(PairSingularity s);
/// Coefficient test for a boundary; negative coefficients throw InputError.
PairSingularity pair_singularity(const RationalPoint& boundary);

bool is_terminal(const Fan& f);

/// Pullback of a divisor on `target` to a fan refining it through the target's
/// lattice map: coefficient -psi(L w) at each ray w.
TorusDivisor pullback(const Fan& source, const ToricModel& target, const TorusDivisor& d);

/// Pushforward along a birational contraction: keeps coefficients of the rays
/// that survive. Throws InputError when the target has a ray the source lacks.
TorusDivisor pushforward(const Fan& source, const Fan& target, const TorusDivisor& d);

struct PullbackComparison {
  TorusDivisor pushforward;                // f_* D on the target
  Fan refinement;                          // common refinement W
  TorusDivisor e;                          // p^*D - q^*f_*D on W
  std::vector<std::size_t> exceptional;    // W rays that are source rays absent from the target
  bool non_positive = false;
  bool negative = false;
};

/// Compares p^*D with q^*f_*D for a birational contraction source --> target
/// (target rays a subset of source rays). Non-birational models throw.
PullbackComparison pullback_compare(const ToricModel& source, const ToricModel& target,
                                    const TorusDivisor& d);

}  // namespace toric
