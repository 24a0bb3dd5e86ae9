#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "toric/catalog.hpp"
#include "toric/mmp.hpp"

using namespace toric;
using namespace toric::test;

namespace {

std::size_t ray(const Fan& f, std::initializer_list<long> v) {
  auto i = f.ray_index(zv(v));
  REQUIRE(i < f.rays.size());
  return i;
}

Fan plane_in_f1_coordinates() {
  Fan p2;
  p2.rank = 2;
  p2.rays = {zv({1, 0}), zv({-1, 1}), zv({0, -1})};
  p2.max_cones = {{0, 1}, {1, 2}, {0, 2}};
  return canonical(p2);
}

const ExtremalRay& ray_negative_on(const MoriCone& mc, std::size_t r) {
  for (const auto& x : mc.rays)
    if (sgn(x.relation[r]) < 0) return x;
  FAIL("no extremal ray negative on the requested ray");
  return mc.rays.front();
}

const ExtremalRay& fiber_ray(const MoriCone& mc) {
  for (const auto& x : mc.rays)
    if (std::all_of(x.relation.begin(), x.relation.end(), [](const Integer& c) { return sgn(c) >= 0; })) return x;
  FAIL("no fiber-type extremal ray");
  return mc.rays.front();
}

}  // namespace

TEST_CASE("mori cones") {
  CHECK(mori_cone(catalog::projective_plane()).rays.size() == 1);
  CHECK(mori_cone(catalog::p1_x_p1()).rays.size() == 2);
  auto f1 = mori_cone(catalog::hirzebruch(1));
  CHECK(f1.rays.size() == 2);
  CHECK(mori_cone(catalog::blowup_plane_two_points()).rays.size() == 3);
  CHECK(mori_cone(catalog::p1_cubed()).rays.size() == 3);
}

TEST_CASE("contractions of F_1") {
  Fan f1 = catalog::hirzebruch(1);
  auto mc = mori_cone(f1);
  std::size_t e = ray(f1, {0, 1});
  auto div = contract(f1, ray_negative_on(mc, e));
  CHECK(div.kind == ContractionKind::divisorial);
  CHECK(div.j_minus == std::vector<std::size_t>{e});
  CHECK(div.target.birational());
  CHECK(div.target.fan == plane_in_f1_coordinates());

  auto fib = contract(f1, fiber_ray(mc));
  CHECK(fib.kind == ContractionKind::fiber);
  CHECK(fib.target.fan == catalog::projective_line());
  CHECK(fib.target.lattice_map == IntMatrix{zv({1, 0})});

  ExtremalRay bogus;
  bogus.relation = LatticeVector(4, Integer(1));
  CHECK_THROWS_AS(contract(f1, bogus), InputError);
}

TEST_CASE("the 3-fold flop") {
  Fan s = catalog::pyramid_small_s();
  auto mc = mori_cone(s);
  const ExtremalRay* small = nullptr;
  for (const auto& r : mc.rays) {
    std::size_t neg = 0;
    for (const auto& c : r.relation) neg += sgn(c) < 0;
    if (neg == 2) small = &r;
  }
  REQUIRE(small != nullptr);
  // b + d = a + c
  CHECK(small->relation[ray(s, {0, 1, -1})] == 1);
  CHECK(small->relation[ray(s, {0, -1, -1})] == 1);
  CHECK(small->relation[ray(s, {1, 0, -1})] == -1);
  CHECK(small->relation[ray(s, {-1, 0, -1})] == -1);
  auto step = contract(s, *small);
  CHECK(step.kind == ContractionKind::flip);
  CHECK(step.target.fan == catalog::pyramid());
  REQUIRE(step.flipped.has_value());
  CHECK(step.flipped->fan == catalog::pyramid_small_t());
  // involution
  CHECK(flip(step.flipped->fan, step).fan == s);
  ContractionStep div;
  div.kind = ContractionKind::divisorial;
  CHECK_THROWS_AS(flip(s, div), InputError);
}

TEST_CASE("ample models") {
  Fan p2 = catalog::projective_plane();
  auto am = ample_model(p2, scale(canonical_divisor(p2), Rational(-1)));
  CHECK(am.model.birational());
  CHECK(am.model.fan == p2);
  CHECK(am.ample == RationalPoint(3, Rational(1)));

  Fan f1 = catalog::hirzebruch(1);
  TorusDivisor h = zero_divisor(f1);
  h[ray(f1, {0, -1})] = 1;
  auto hm = ample_model(f1, h);
  CHECK(hm.model.fan == plane_in_f1_coordinates());

  TorusDivisor e = zero_divisor(f1);
  e[ray(f1, {0, 1})] = 1;
  auto em = ample_model(f1, e);
  CHECK(em.model.fan.rank == 0);

  TorusDivisor fiber = zero_divisor(f1);
  fiber[ray(f1, {1, 0})] = 1;
  auto fm = ample_model(f1, fiber);
  CHECK(fm.model.fan == catalog::projective_line());
  CHECK(fm.model.lattice_map == IntMatrix{zv({1, 0})});

  TorusDivisor neg = zero_divisor(p2);
  neg[0] = -1;
  CHECK_THROWS_WITH_AS(ample_model(p2, neg), "not pseudo-effective", InputError);
}

TEST_CASE("ample models are invariant under linear equivalence") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(-4, 6);
  for (const auto& entry : catalog::corpus()) {
    INFO(entry.name);
    for (int i = 0; i < 8; ++i) {
      TorusDivisor d;
      for (std::size_t r = 0; r < entry.fan.rays.size(); ++r) d.emplace_back(num(rng), 2);
      for (auto& x : d) x.canonicalize();
      if (!is_pseudo_effective(entry.fan, d)) continue;
      RationalPoint m;
      for (std::size_t k = 0; k < entry.fan.rank; ++k) m.emplace_back(num(rng));
      auto a = ample_model(entry.fan, d);
      auto b = ample_model(entry.fan, add(d, principal_divisor(entry.fan, m)));
      CHECK(a.model == b.model);
      if (is_ample(entry.fan, d)) CHECK(a.model == birational_model(entry.fan));
    }
  }
}

TEST_CASE("run_mmp examples") {
  Fan p2 = catalog::projective_plane();
  auto t = run_mmp(p2, canonical_divisor(p2));
  CHECK(t.outcome == MMPOutcome::mori_fiber_space);
  REQUIRE(t.steps.size() == 1);
  CHECK(t.steps[0].kind == ContractionKind::fiber);
  REQUIRE(t.base.has_value());
  CHECK(t.base->fan.rank == 0);
  CHECK(verify_output(t).ok());

  Fan f1 = catalog::hirzebruch(1);
  for (auto s : {Strategy{}, Strategy{Strategy::Kind::seeded_random, 1}, Strategy{Strategy::Kind::seeded_random, 2}}) {
    auto k = run_mmp(f1, canonical_divisor(f1), s);
    CHECK(k.outcome == MMPOutcome::mori_fiber_space);
    auto rep = verify_output(k);
    for (const auto& msg : rep.failures) INFO(msg);
    CHECK(rep.ok());
  }

  Fan pp = catalog::p1_x_p1();
  auto nef = run_mmp(pp, RationalPoint(4, Rational(1)));
  CHECK(nef.outcome == MMPOutcome::minimal_model);
  CHECK(nef.steps.empty());
  CHECK(verify_output(nef).ok());
}

TEST_CASE("run_mmp flips the 3-fold flop") {
  Fan s = catalog::pyramid_small_s();
  TorusDivisor d = zero_divisor(s);
  d[ray(s, {1, 0, -1})] = 1;
  d[ray(s, {0, 0, 1})] = 3;
  auto t = run_mmp(s, d);
  REQUIRE_FALSE(t.steps.empty());
  CHECK(t.steps[0].kind == ContractionKind::flip);
  auto rep = verify_output(t);
  for (const auto& msg : rep.failures) INFO(msg);
  CHECK(rep.ok());
}

TEST_CASE("verify_output flags a contraction that is not D-negative") {
  Fan f1 = catalog::hirzebruch(1);
  TorusDivisor h = zero_divisor(f1);
  h[ray(f1, {0, -1})] = 1;  // pullback of a line: trivial on E
  auto mc = mori_cone(f1);
  auto step = contract(f1, ray_negative_on(mc, ray(f1, {0, 1})));
  MMPTrace fake;
  fake.start = birational_model(f1);
  fake.start.fan = f1;
  fake.divisor = h;
  fake.steps = {step};
  fake.outcome = MMPOutcome::minimal_model;
  fake.result = step.target;
  fake.result_divisor = pushforward(f1, step.target.fan, h);
  auto rep = verify_output(fake);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("random MMP runs verify") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
  for (const auto& entry : catalog::corpus()) {
    INFO(entry.name);
    for (int i = 0; i < 6; ++i) {
      TorusDivisor d;
      for (std::size_t r = 0; r < entry.fan.rays.size(); ++r) d.emplace_back(num(rng), den(rng));
      for (auto& x : d) x.canonicalize();
      auto t = run_mmp(entry.fan, d, Strategy{Strategy::Kind::seeded_random, rng()});
      auto rep = verify_output(t);
      for (const auto& msg : rep.failures) INFO(msg);
      CHECK(rep.ok());
      std::size_t divisorial = 0;
      for (const auto& s : t.steps) divisorial += s.kind == ContractionKind::divisorial;
      CHECK(divisorial + 1 <= picard_number(entry.fan));
    }
  }
}
