#include "toric/divisor.hpp"

#include <algorithm>

namespace toric {

namespace {

void check_length(const Fan& f, const TorusDivisor& d) {
  if (d.size() != f.rays.size())
    throw InputError("divisor has " + std::to_string(d.size()) + " coefficients for " +
                     std::to_string(f.rays.size()) + " rays");
}

}  // namespace

TorusDivisor canonical_divisor(const Fan& f) { return TorusDivisor(f.rays.size(), Rational(-1)); }

TorusDivisor zero_divisor(const Fan& f) { return TorusDivisor(f.rays.size(), Rational(0)); }

TorusDivisor principal_divisor(const Fan& f, const RationalPoint& m) {
  TorusDivisor d;
  d.reserve(f.rays.size());
  for (const auto& r : f.rays) d.push_back(dot(m, r));
  return d;
}

Rational SupportFunction::operator()(const Fan& f, const RationalPoint& x) const {
  auto c = locate(f, x);
  if (!c) throw InputError("support function evaluated outside the support of the fan");
  return dot(m[*c], x);
}

SupportFunction support_function(const Fan& f, const TorusDivisor& d) {
  check_length(f, d);
  SupportFunction sf;
  sf.m.reserve(f.max_cones.size());
  for (const auto& c : f.max_cones) {
    RatMatrix a;
    RationalPoint b;
    for (auto i : c) {
      a.push_back(to_rational(f.rays[i]));
      b.push_back(-d[i]);
    }
    auto sol = solve_linear(a, b, f.rank);
    if (!sol.feasible) throw InputError("divisor not R-Cartier on non-simplicial cone");
    sf.m.push_back(sol.particular);
  }
  return sf;
}

RationalPoint intersection_functional(const Fan& f, const Wall& w) {
  RationalPoint out = to_rational(w.relation);
  if (out.size() != f.rays.size()) throw InputError("wall does not belong to this fan");
  Rational cb = out[w.ray_b];
  for (auto& x : out) x /= cb;
  return out;
}

Rational intersection_value(const Fan& f, const Wall& w, const TorusDivisor& d) {
  check_length(f, d);
  RatMatrix a;
  RationalPoint b;
  for (auto i : f.max_cones[w.cone_a]) {
    a.push_back(to_rational(f.rays[i]));
    b.push_back(-d[i]);
  }
  auto m = solve_square(a, b);
  if (!m) throw InputError("intersection_value: wall cone is not simplicial");
  return dot(*m, f.rays[w.ray_b]) + d[w.ray_b];
}

bool is_nef(const Fan& f, const TorusDivisor& d) {
  check_length(f, d);
  for (const auto& w : walls(f))
    if (sgn(dot(d, w.relation)) < 0) return false;
  return true;
}

bool is_ample(const Fan& f, const TorusDivisor& d) {
  check_length(f, d);
  for (const auto& w : walls(f))
    if (sgn(dot(d, w.relation)) <= 0) return false;
  return true;
}

bool is_nef_by_convexity(const Fan& f, const TorusDivisor& d) {
  auto sf = support_function(f, d);
  for (const auto& m : sf.m)
    for (std::size_t r = 0; r < f.rays.size(); ++r)
      if (dot(m, f.rays[r]) < -d[r]) return false;
  return true;
}

bool is_ample_by_convexity(const Fan& f, const TorusDivisor& d) {
  auto sf = support_function(f, d);
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    const auto& cone = f.max_cones[c];
    for (std::size_t r = 0; r < f.rays.size(); ++r) {
      if (std::binary_search(cone.begin(), cone.end(), r)) continue;
      if (dot(sf.m[c], f.rays[r]) <= -d[r]) return false;
    }
  }
  // Distinct maximal cones must carry distinct functionals.
  for (std::size_t a = 0; a < sf.m.size(); ++a)
    for (std::size_t b = a + 1; b < sf.m.size(); ++b)
      if (sf.m[a] == sf.m[b]) return false;
  return true;
}

Polyhedron section_polytope(const Fan& f, const TorusDivisor& d) {
  check_length(f, d);
  Polyhedron p;
  p.dim = f.rank;
  for (std::size_t r = 0; r < f.rays.size(); ++r) p.inequalities.push_back({to_rational(f.rays[r]), -d[r]});
  return p;
}

bool is_pseudo_effective(const Fan& f, const TorusDivisor& d) {
  return lp_feasible(section_polytope(f, d)).feasible();
}

bool is_big(const Fan& f, const TorusDivisor& d) {
  auto v = vertex_enumeration(section_polytope(f, d));
  return v.dimension(f.rank) == static_cast<int>(f.rank);
}

std::vector<LatticeVector> relation_basis(const Fan& f) {
  IntMatrix v(f.rank, LatticeVector(f.rays.size()));
  for (std::size_t j = 0; j < f.rays.size(); ++j)
    for (std::size_t i = 0; i < f.rank; ++i) v[i][j] = f.rays[j][i];
  if (f.rank == 0) {
    IntMatrix id = identity_matrix(f.rays.size());
    return id;
  }
  return hermite_basis(integer_kernel(v, f.rays.size()), f.rays.size());
}

NumericalClass numerical_class(const Fan& f, const TorusDivisor& d) {
  check_length(f, d);
  NumericalClass c;
  for (const auto& rel : relation_basis(f)) c.coords.push_back(dot(d, rel));
  return c;
}

std::optional<RationalPoint> r_linear_equiv(const Fan& f, const TorusDivisor& d, const TorusDivisor& d2) {
  check_length(f, d);
  check_length(f, d2);
  RatMatrix a;
  for (const auto& r : f.rays) a.push_back(to_rational(r));
  auto sol = solve_linear(a, sub(d2, d), f.rank);
  if (!sol.feasible) return std::nullopt;
  return sol.particular;
}

std::string to_string(PairSingularity s) {
  switch (s) {
    case PairSingularity::klt: return "klt";
    case PairSingularity::lc: return "lc";
    case PairSingularity::not_certified: return "not-certified";
  }
  return "?";
}

PairSingularity pair_singularity(const RationalPoint& boundary) {
  bool below_one = true;
  for (const auto& c : boundary) {
    if (sgn(c) < 0) throw InputError("boundary has a negative coefficient");
    if (c > 1) return PairSingularity::not_certified;
    if (c == 1) below_one = false;
  }
  return below_one ? PairSingularity::klt : PairSingularity::lc;
}

bool is_terminal(const Fan& f) {
  if (!is_simplicial(f)) throw InputError("is_terminal: fan is not simplicial");
  const std::size_t n = f.rank;
  for (const auto& c : f.max_cones) {
    RatMatrix cols = transpose(f.cone_generators(c), n);  // columns are generators
    std::vector<Integer> lo(n, 0), hi(n, 0);
    for (auto i : c)
      for (std::size_t k = 0; k < n; ++k) {
        lo[k] = std::min(lo[k], f.rays[i][k]);
        hi[k] = std::max(hi[k], f.rays[i][k]);
      }
    LatticeVector x = lo;
    while (true) {
      if (!is_zero(x) && std::find_if(c.begin(), c.end(), [&](std::size_t i) { return f.rays[i] == x; }) == c.end()) {
        auto lambda = solve_square(cols, to_rational(x));
        if (lambda) {
          Rational total = 0;
          bool nonneg = true;
          for (const auto& l : *lambda) {
            if (sgn(l) < 0) nonneg = false;
            total += l;
          }
          if (nonneg && total <= 1) return false;
        }
      }
      std::size_t k = 0;
      while (k < n && x[k] == hi[k]) x[k] = lo[k], ++k;
      if (k == n) break;
      ++x[k];
    }
  }
  return true;
}

TorusDivisor pullback(const Fan& source, const ToricModel& target, const TorusDivisor& d) {
  auto sf = support_function(target.fan, d);
  TorusDivisor out;
  out.reserve(source.rays.size());
  for (const auto& w : source.rays) {
    if (target.fan.rank == 0) {
      out.push_back(Rational(0));  // the point has no divisors
      continue;
    }
    out.push_back(-sf(target.fan, to_rational(mat_vec(target.lattice_map, w))));
  }
  return out;
}

TorusDivisor pushforward(const Fan& source, const Fan& target, const TorusDivisor& d) {
  check_length(source, d);
  TorusDivisor out;
  for (const auto& r : target.rays) {
    auto i = source.ray_index(r);
    if (i == source.rays.size()) throw InputError("pushforward: target ray " + to_string(r) + " is not a source ray");
    out.push_back(d[i]);
  }
  return out;
}

PullbackComparison pullback_compare(const ToricModel& source, const ToricModel& target, const TorusDivisor& d) {
  if (!source.birational() || !target.birational() || source.fan.rank != target.fan.rank)
    throw InputError("pullback_compare: map is not birational");
  PullbackComparison out;
  out.pushforward = pushforward(source.fan, target.fan, d);
  auto ref = common_refinement(source.fan, target.fan);
  out.refinement = ref.fan;
  auto p = pullback(ref.fan, source, d);
  auto q = pullback(ref.fan, target, out.pushforward);
  out.e = sub(p, q);
  out.non_positive = std::all_of(out.e.begin(), out.e.end(), [](const Rational& x) { return sgn(x) >= 0; });
  for (const auto& r : source.fan.rays) {
    if (target.fan.ray_index(r) != target.fan.rays.size()) continue;
    out.exceptional.push_back(ref.fan.ray_index(r));
  }
  out.negative = out.non_positive && std::all_of(out.exceptional.begin(), out.exceptional.end(),
                                                 [&](std::size_t i) { return sgn(out.e[i]) > 0; });
  return out;
}

}  // namespace toric
