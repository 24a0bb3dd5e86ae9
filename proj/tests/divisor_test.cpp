#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "toric/catalog.hpp"
#include "toric/divisor.hpp"

using namespace toric;
using namespace toric::test;

namespace {

// Index of a ray given by coordinates.
std::size_t ray(const Fan& f, std::initializer_list<long> v) {
  auto i = f.ray_index(zv(v));
  REQUIRE(i < f.rays.size());
  return i;
}

TorusDivisor random_divisor(const Fan& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-6, 6), den(1, 3);
  TorusDivisor d;
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    Rational x(num(rng), den(rng));
    x.canonicalize();
    d.push_back(x);
  }
  return d;
}

}  // namespace

TEST_CASE("support functions") {
  Fan p1 = catalog::projective_line();
  std::size_t plus = ray(p1, {1}), minus = ray(p1, {-1});
  TorusDivisor d(2);
  d[plus] = 3;
  d[minus] = q("5/2");
  auto sf = support_function(p1, d);
  for (std::size_t c = 0; c < p1.max_cones.size(); ++c) {
    if (p1.max_cones[c][0] == plus) CHECK(sf.m[c][0] == -3);
    else CHECK(sf.m[c][0] == q("5/2"));
  }
  auto zero = support_function(p1, zero_divisor(p1));
  for (const auto& m : zero.m) CHECK(is_zero(m));

  Fan p2 = catalog::projective_plane();
  auto anti = support_function(p2, scale(canonical_divisor(p2), Rational(-1)));
  for (std::size_t c = 0; c < p2.max_cones.size(); ++c)
    for (auto r : p2.max_cones[c]) CHECK(dot(anti.m[c], p2.rays[r]) == -1);

  // non-Cartier divisor on the pyramid apex cone
  Fan pyr = catalog::pyramid();
  TorusDivisor bad = zero_divisor(pyr);
  bad[ray(pyr, {1, 0, -1})] = 1;
  CHECK_THROWS_WITH_AS(support_function(pyr, bad), "divisor not R-Cartier on non-simplicial cone", InputError);
  CHECK_NOTHROW(support_function(pyr, canonical_divisor(pyr)));
}

TEST_CASE("intersection functionals") {
  Fan p1 = catalog::projective_line();
  auto ws = walls(p1);
  REQUIRE(ws.size() == 1);
  TorusDivisor d{q("2"), q("-7/3")};
  CHECK(intersection_value(p1, ws[0], d) == d[0] + d[1]);
  CHECK(dot(intersection_functional(p1, ws[0]), d) == d[0] + d[1]);

  for (const auto& e : catalog::corpus()) {
    INFO(e.name);
    for (const auto& w : walls(e.fan))
      for (std::size_t i = 0; i < e.fan.rank; ++i) {
        RationalPoint m(e.fan.rank, Rational(0));
        m[i] = 1;
        CHECK(intersection_value(e.fan, w, principal_divisor(e.fan, m)) == 0);
      }
  }

  Fan f1 = catalog::hirzebruch(1);
  std::size_t ex = ray(f1, {0, 1});
  bool found = false;
  for (const auto& w : walls(f1)) {
    if (!std::binary_search(w.face.begin(), w.face.end(), ex)) continue;
    found = true;
    CHECK(intersection_value(f1, w, canonical_divisor(f1)) < 0);
  }
  CHECK(found);
}

TEST_CASE("nef and ample") {
  Fan p2 = catalog::projective_plane();
  TorusDivisor h{q("1/3"), q("1/2"), q("1/6")};
  CHECK(is_ample(p2, h));
  CHECK(is_nef(p2, zero_divisor(p2)));
  CHECK_FALSE(is_ample(p2, zero_divisor(p2)));
  Fan f1 = catalog::hirzebruch(1);
  TorusDivisor e = zero_divisor(f1);
  e[ray(f1, {0, 1})] = 1;
  CHECK_FALSE(is_nef(f1, e));
}

TEST_CASE("nef oracles agree on random divisors") {
  std::mt19937_64 rng(7);
  for (const auto& e : catalog::corpus()) {
    INFO(e.name);
    for (int i = 0; i < 40; ++i) {
      auto d = random_divisor(e.fan, rng);
      CHECK(is_nef(e.fan, d) == is_nef_by_convexity(e.fan, d));
      CHECK(is_ample(e.fan, d) == is_ample_by_convexity(e.fan, d));
      if (is_ample(e.fan, d)) {
        CHECK(is_nef(e.fan, d));
        CHECK(is_big(e.fan, d));
      }
    }
  }
}

TEST_CASE("section polytopes") {
  Fan p2 = catalog::projective_plane();
  auto v = vertex_enumeration(section_polytope(p2, scale(canonical_divisor(p2), Rational(-1))));
  CHECK(v.vertices == std::vector<RationalPoint>{qv({-1, -1}), qv({-1, 2}), qv({2, -1})});
  TorusDivisor neg = zero_divisor(p2);
  neg[ray(p2, {1, 0})] = -1;
  CHECK_FALSE(is_pseudo_effective(p2, neg));
  CHECK(is_pseudo_effective(p2, zero_divisor(p2)));
  CHECK_FALSE(is_big(p2, zero_divisor(p2)));
}

TEST_CASE("numerical classes") {
  Fan p2 = catalog::projective_plane();
  TorusDivisor d0 = zero_divisor(p2), d1 = zero_divisor(p2);
  d0[ray(p2, {1, 0})] = 1;
  d1[ray(p2, {0, 1})] = 1;
  auto m = r_linear_equiv(p2, d0, d1);
  REQUIRE(m.has_value());
  CHECK(add(d0, principal_divisor(p2, *m)) == d1);
  CHECK(numerical_class(p2, d0) == numerical_class(p2, d1));
  auto self = r_linear_equiv(p2, d0, d0);
  REQUIRE(self.has_value());
  CHECK(is_zero(*self));

  Fan pp = catalog::p1_x_p1();
  TorusDivisor a = zero_divisor(pp), b = zero_divisor(pp);
  a[ray(pp, {1, 0})] = 1;
  b[ray(pp, {0, 1})] = 1;
  CHECK(numerical_class(pp, a).coords.size() == 2);
  CHECK_FALSE(r_linear_equiv(pp, a, b).has_value());
  RatMatrix rows{numerical_class(pp, a).coords, numerical_class(pp, b).coords};
  CHECK(rank(rows, 2) == 2);
}

TEST_CASE("pair singularities") {
  CHECK(pair_singularity({q("1/2"), q("1")}) == PairSingularity::lc);
  CHECK(pair_singularity({}) == PairSingularity::klt);
  CHECK(pair_singularity({q("0"), q("0")}) == PairSingularity::klt);
  CHECK(pair_singularity({q("3/2")}) == PairSingularity::not_certified);
  CHECK_THROWS_AS(pair_singularity({q("-1/2")}), InputError);
}

TEST_CASE("terminality") {
  CHECK(is_terminal(catalog::projective_plane()));
  CHECK_FALSE(is_terminal(catalog::weighted_p112()));
  CHECK(is_terminal(catalog::p1_x_p1()));
  // (0,0,-1) is the midpoint of two generators of a cone of S
  CHECK_FALSE(is_terminal(catalog::pyramid_small_s()));
}

TEST_CASE("pullback comparison") {
  Fan f1 = catalog::hirzebruch(1);
  auto x = birational_model(f1);
  auto id = pullback_compare(x, x, canonical_divisor(f1));
  CHECK(std::all_of(id.e.begin(), id.e.end(), [](const Rational& v) { return v == 0; }));
  CHECK(id.non_positive);

  Fan p2;
  p2.rank = 2;
  p2.rays = {zv({1, 0}), zv({-1, 1}), zv({0, -1})};
  p2.max_cones = {{0, 1}, {1, 2}, {0, 2}};
  auto y = birational_model(p2);
  auto k = pullback_compare(x, y, canonical_divisor(f1));
  std::size_t ex = k.refinement.ray_index(zv({0, 1}));
  REQUIRE(ex < k.e.size());
  CHECK(k.e[ex] == 1);
  CHECK(k.negative);
  CHECK(k.exceptional == std::vector<std::size_t>{ex});

  // pullback of a hyperplane class: E = 0
  TorusDivisor h = zero_divisor(y.fan);
  h[y.fan.ray_index(zv({0, -1}))] = 1;
  auto hz = pullback(f1, y, h);
  auto cmp = pullback_compare(x, y, hz);
  CHECK(std::all_of(cmp.e.begin(), cmp.e.end(), [](const Rational& v) { return v == 0; }));
  CHECK(cmp.non_positive);
  CHECK_FALSE(cmp.negative);
}
