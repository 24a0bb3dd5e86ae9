#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "toric/polyhedron.hpp"

using namespace toric;
using namespace toric::test;

namespace {

Polyhedron make(std::size_t dim, std::vector<std::pair<RationalPoint, long>> rows) {
  Polyhedron p;
  p.dim = dim;
  for (auto& [a, b] : rows) p.inequalities.push_back({a, Rational(b)});
  return p;
}

void check_lp(const Polyhedron& p) {
  auto r = lp_feasible(p);
  if (r.feasible()) {
    CHECK(p.contains(*r.point));
    return;
  }
  REQUIRE(r.farkas.has_value());
  const auto& y = *r.farkas;
  REQUIRE(y.size() == p.inequalities.size());
  RationalPoint combo(p.dim, Rational(0));
  Rational rhs = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    CHECK(sgn(y[i]) >= 0);
    combo = axpy(combo, y[i], p.inequalities[i].normal);
    rhs += y[i] * p.inequalities[i].offset;
  }
  CHECK(is_zero(combo));
  CHECK(sgn(rhs) > 0);
}

// Brute force: vertices are feasible solutions of every n-subset of tight rows.
std::vector<RationalPoint> brute_vertices(const Polyhedron& p) {
  std::vector<RationalPoint> out;
  const std::size_t m = p.inequalities.size(), n = p.dim;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != n) continue;
    RatMatrix a;
    RationalPoint b;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) {
        a.push_back(p.inequalities[i].normal);
        b.push_back(p.inequalities[i].offset);
      }
    auto x = solve_square(a, b);
    if (x && p.contains(*x) && std::find(out.begin(), out.end(), *x) == out.end()) out.push_back(*x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("lp_feasible examples") {
  auto unit = make(1, {{qv({1}), 0}, {qv({-1}), -1}});
  auto r = lp_feasible(unit);
  REQUIRE(r.feasible());
  CHECK((*r.point)[0] >= 0);
  CHECK((*r.point)[0] <= 1);
  check_lp(unit);

  auto empty = make(1, {{qv({1}), 1}, {qv({-1}), 0}});
  CHECK_FALSE(lp_feasible(empty).feasible());
  check_lp(empty);

  // P_D for D = -D_0 on P^2
  auto pd = make(2, {{qv({1, 0}), 1}, {qv({0, 1}), 0}, {qv({-1, -1}), 0}});
  CHECK_FALSE(lp_feasible(pd).feasible());
  check_lp(pd);
}

TEST_CASE("vertex_enumeration examples") {
  auto tri = make(2, {{qv({1, 0}), -1}, {qv({0, 1}), -1}, {qv({-1, -1}), -1}});
  auto v = vertex_enumeration(tri);
  std::vector<RationalPoint> expect{qv({-1, -1}), qv({-1, 2}), qv({2, -1})};
  CHECK(v.vertices == expect);
  CHECK(v.rays.empty());

  auto half = vertex_enumeration(make(1, {{qv({1}), 0}}));
  CHECK(half.vertices == std::vector<RationalPoint>{qv({0})});
  CHECK(half.rays == std::vector<RationalPoint>{qv({1})});

  CHECK(vertex_enumeration(make(1, {{qv({1}), 1}, {qv({-1}), 0}})).empty());
}

TEST_CASE("vertex enumeration agrees with brute force on random polytopes") {
  unsigned seed = 12345;
  auto next = [&] {
    seed = seed * 1103515245u + 12345u;
    return static_cast<long>((seed >> 16) % 7) - 3;
  };
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t dim = 2 + trial % 2;
    Polyhedron p;
    p.dim = dim;
    // a box keeps it bounded
    for (std::size_t i = 0; i < dim; ++i) {
      RationalPoint e(dim, Rational(0));
      e[i] = 1;
      p.inequalities.push_back({e, Rational(-4)});
      e[i] = -1;
      p.inequalities.push_back({e, Rational(-4)});
    }
    for (int k = 0; k < 3; ++k) {
      RationalPoint a;
      for (std::size_t i = 0; i < dim; ++i) a.emplace_back(next());
      if (is_zero(a)) continue;
      p.inequalities.push_back({a, Rational(next())});
    }
    auto v = vertex_enumeration(p);
    CHECK(v.vertices == brute_vertices(p));
    check_lp(p);
  }
}

TEST_CASE("line arrangements in the square") {
  std::vector<RationalPoint> square{qv({-1, -1}), qv({1, -1}), qv({1, 1}), qv({-1, 1})};
  auto none = line_arrangement_2d({}, square);
  CHECK(none.cells.size() == 1);
  CHECK(none.cells[0].area == 4);

  auto one = line_arrangement_2d({Line2{1, 0, 0}}, square);
  CHECK(one.cells.size() == 2);
  CHECK(one.interior_edge_count() == 1);

  auto two = line_arrangement_2d({Line2{1, 0, 0}, Line2{0, 1, 0}, Line2{2, 0, 0}}, square);
  CHECK(two.cells.size() == 4);
  CHECK(two.interior_edge_count() == 4);
  CHECK(two.interior_vertex_count() == 1);

  auto skew = line_arrangement_2d({Line2{1, 1, 0}, Line2{1, -2, Rational(1, 2)}, Line2{0, 1, Rational(-1, 3)}}, square);
  Rational total = 0;
  for (const auto& c : skew.cells) {
    total += c.area;
    std::vector<RationalPoint> poly;
    for (auto i : c.vertices) poly.push_back(skew.vertices[i]);
    CHECK(polygon_area(poly) == c.area);
  }
  CHECK(total == 4);
}

TEST_CASE("cone helpers") {
  std::vector<RationalPoint> gens{qv({1, 0, 1}), qv({0, 1, 1}), qv({-1, 0, 1}), qv({0, -1, 1}), qv({0, 0, 1})};
  auto ext = extreme_generators(gens, 3);
  CHECK(ext == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(cone_facets(gens, 3).size() == 4);
  CHECK(cone_contains(gens, qv({0, 0, 5})));
  CHECK_FALSE(cone_contains(gens, qv({2, 0, 1})));
}
