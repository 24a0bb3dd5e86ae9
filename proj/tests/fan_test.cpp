#include <doctest.h>

#include "helpers.hpp"
#include "toric/catalog.hpp"
#include "toric/fan.hpp"

using namespace toric;
using namespace toric::test;

TEST_CASE("validate_fan") {
  Fan p2 = catalog::projective_plane();
  CHECK(validate_fan(p2).valid);

  Fan partial = p2;
  partial.max_cones.pop_back();
  CHECK(validate_fan(partial).valid);
  CHECK_FALSE(is_complete(partial));

  Fan overlap;
  overlap.rank = 2;
  overlap.rays = {zv({1, 0}), zv({0, 1}), zv({1, 1})};
  overlap.max_cones = {{0, 1}, {0, 2}};
  auto d = validate_fan(overlap);
  CHECK_FALSE(d.valid);
  REQUIRE(d.violating_pair.has_value());
  CHECK(d.violating_pair->first == 0);
  CHECK(d.violating_pair->second == 1);

  Fan nonprim = p2;
  nonprim.rays[0] = zv({2, 0});
  CHECK_FALSE(validate_fan(nonprim).valid);
}

TEST_CASE("completeness and simpliciality") {
  CHECK(is_complete(catalog::projective_line()));
  CHECK(is_complete(catalog::projective_plane()));
  CHECK(is_simplicial(catalog::projective_plane()));
  Fan pyr = catalog::pyramid();
  CHECK(validate_fan(pyr).valid);
  CHECK(is_complete(pyr));
  CHECK_FALSE(is_simplicial(pyr));
  for (const auto& e : catalog::corpus()) {
    INFO(e.name);
    CHECK(validate_fan(e.fan).valid);
    CHECK(is_complete(e.fan));
    CHECK(is_simplicial(e.fan));
  }
}

TEST_CASE("walls carry primitive relations") {
  for (const auto& e : catalog::corpus()) {
    INFO(e.name);
    for (const auto& w : walls(e.fan)) {
      CHECK(gcd_of(w.relation) == 1);
      CHECK(sgn(w.relation[w.ray_a]) > 0);
      CHECK(sgn(w.relation[w.ray_b]) > 0);
      LatticeVector sum(e.fan.rank, Integer(0));
      for (std::size_t r = 0; r < e.fan.rays.size(); ++r)
        for (std::size_t i = 0; i < e.fan.rank; ++i) sum[i] += w.relation[r] * e.fan.rays[r][i];
      CHECK(is_zero(sum));
    }
  }
}

TEST_CASE("projectivity") {
  auto p2 = is_projective(catalog::projective_plane());
  CHECK(p2.projective());
  CHECK(is_projective(catalog::p1_x_p1()).projective());
  for (const auto& e : catalog::corpus()) {
    INFO(e.name);
    auto cert = is_projective(e.fan);
    REQUIRE(cert.projective());
    for (const auto& w : walls(e.fan)) CHECK(sgn(dot(*cert.ample_divisor, w.relation)) > 0);
  }
  Fan prism = catalog::twisted_prism();
  CHECK(validate_fan(prism).valid);
  CHECK(is_complete(prism));
  auto cert = is_projective(prism);
  CHECK_FALSE(cert.projective());
  REQUIRE(cert.farkas.has_value());
  auto ws = walls(prism);
  REQUIRE(cert.farkas->size() == ws.size());
  RationalPoint combo(prism.rays.size(), Rational(0));
  Rational total = 0;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    CHECK(sgn((*cert.farkas)[i]) >= 0);
    combo = axpy(combo, (*cert.farkas)[i], to_rational(ws[i].relation));
    total += (*cert.farkas)[i];
  }
  CHECK(is_zero(combo));
  CHECK(sgn(total) > 0);
  CHECK_THROWS_AS(is_projective([] {
                    Fan f = catalog::projective_plane();
                    f.max_cones.pop_back();
                    return f;
                  }()),
                  InputError);
}

TEST_CASE("picard numbers") {
  CHECK(picard_number(catalog::projective_plane()) == 1);
  CHECK(picard_number(catalog::p1_x_p1()) == 2);
  CHECK(picard_number(catalog::hirzebruch(1)) == 2);
  CHECK(picard_number(catalog::p1_cubed()) == 3);
  // the small contraction of S: the apex cone is not simplicial
  CHECK(picard_number(catalog::pyramid()) == 1);
}

TEST_CASE("common refinements") {
  Fan p2 = catalog::projective_plane();
  CHECK(common_refinement(p2, p2).fan == p2);

  Fan f1 = catalog::hirzebruch(1);
  Fan p2b;
  p2b.rank = 2;
  p2b.rays = {zv({1, 0}), zv({-1, 1}), zv({0, -1})};
  p2b.max_cones = {{0, 1}, {1, 2}, {0, 2}};
  auto r = common_refinement(f1, p2b);
  CHECK(r.fan == f1);
  CHECK(r.to_b.kind == FanMorphism::Kind::refinement);

  auto st = common_refinement(catalog::pyramid_small_s(), catalog::pyramid_small_t());
  CHECK(st.fan.max_cones.size() == 8);
  CHECK(st.fan == catalog::pyramid_resolved());
}

TEST_CASE("star subdivisions") {
  Fan p2 = catalog::projective_plane();
  Fan f1 = star_subdivision(p2, zv({1, 1}));
  CHECK(f1.rays.size() == 4);
  CHECK(f1.max_cones.size() == 4);
  CHECK(picard_number(f1) == 2);
  CHECK(star_subdivision(p2, zv({1, 0})) == p2);
  Fan sub = star_subdivision(catalog::pyramid(), zv({0, 0, -1}));
  CHECK(is_simplicial(sub));
  CHECK(sub.max_cones.size() == 8);
  CHECK(is_complete(sub));
  Fan partial = p2;
  partial.max_cones = {{0, 1}};
  CHECK_THROWS_AS(star_subdivision(partial, zv({1, -1})), InputError);
}

TEST_CASE("locate and morphisms") {
  Fan p1 = catalog::projective_line();
  Fan f1 = catalog::hirzebruch(1);
  IntMatrix proj{zv({1, 0})};
  auto m = make_morphism(birational_model(f1), birational_model(p1), proj);
  REQUIRE(m.has_value());
  CHECK(m->kind == FanMorphism::Kind::projection);
  IntMatrix wrong{zv({0, 1})};
  CHECK_FALSE(make_morphism(birational_model(f1), birational_model(p1), wrong).has_value());
  CHECK(locate(p1, qv({-3})).has_value());
}
