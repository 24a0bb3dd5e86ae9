#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "toric/catalog.hpp"
#include "toric/sarkisov.hpp"

using namespace toric;

namespace {

std::vector<MMPTrace> fibrations(const Fan& z, const TorusDivisor& d) {
  std::vector<MMPTrace> found;
  std::set<std::string> keys;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    auto t = run_mmp(z, d, Strategy{Strategy::Kind::seeded_random, seed});
    if (t.outcome != MMPOutcome::mori_fiber_space) continue;
    if (keys.insert(model_key(*t.base) + describe(t.result.fan)).second) found.push_back(t);
  }
  return found;
}

SarkisovChain chain_or_report(const Fan& z, const TorusDivisor& d, const MMPTrace& a, const MMPTrace& b) {
  try {
    return factorize(z, d, a, b);
  } catch (const GenericityError& e) {
    for (const auto& c : e.certificates) MESSAGE(c);
    throw;
  }
}

}  // namespace

TEST_CASE("F1: one link between P2/pt and F1/P1") {
  Fan f1 = catalog::hirzebruch(1);
  auto d = canonical_divisor(f1);
  auto mfs = fibrations(f1, d);
  REQUIRE(mfs.size() == 2);
  auto chain = chain_or_report(f1, d, mfs[0], mfs[1]);
  REQUIRE(chain.links.size() == 1);
  const auto& l = chain.links.front();
  CHECK((l.type == LinkType::I || l.type == LinkType::III));
  CHECK((l.case_tag == 2 || l.case_tag == 3));
  CHECK(l.r.fan.rank == 0);
  CHECK(verify_chain(chain).ok());
  // reversed orientation gives the mirrored type
  auto back = chain_or_report(f1, d, mfs[1], mfs[0]);
  REQUIRE(back.links.size() == 1);
  CHECK(back.links.front().type == (l.type == LinkType::I ? LinkType::III : LinkType::I));
}

TEST_CASE("P1xP1: the two rulings are joined by a link of type IVm") {
  Fan z = catalog::p1_x_p1();
  auto d = canonical_divisor(z);
  auto mfs = fibrations(z, d);
  REQUIRE(mfs.size() == 2);
  auto chain = chain_or_report(z, d, mfs[0], mfs[1]);
  REQUIRE(chain.links.size() == 1);
  const auto& l = chain.links.front();
  CHECK(l.type == LinkType::IVm);
  CHECK(l.case_tag == 1);
  CHECK(l.x == l.y);
  CHECK(l.r.fan.rank == 0);
  CHECK(l.s.fan.rank == 1);
  CHECK(l.t.fan.rank == 1);
  CHECK_FALSE(l.s == l.t);
}

TEST_CASE("identical Mori fiber spaces give the empty chain") {
  Fan z = catalog::projective_plane();
  auto t = run_mmp(z, canonical_divisor(z));
  auto chain = factorize(z, canonical_divisor(z), t, t);
  CHECK(chain.links.empty());
  CHECK_FALSE(chain.slice.has_value());
  CHECK(verify_chain(chain).ok());
}

TEST_CASE("surface corpus chains verify and never contain IVs") {
  for (const auto& e : catalog::corpus()) {
    if (e.fan.rank != 2) continue;
    auto d = canonical_divisor(e.fan);
    auto mfs = fibrations(e.fan, d);
    for (std::size_t i = 1; i < mfs.size(); ++i) {
      auto chain = chain_or_report(e.fan, d, mfs[0], mfs[i]);
      CHECK_MESSAGE(verify_chain(chain).ok(), e.name);
      for (const auto& l : chain.links) CHECK(l.type != LinkType::IVs);
    }
  }
}

TEST_CASE("Bl2P2: the two conic bundle contractions over one P1 are joined through a type II link") {
  Fan z = catalog::blowup_plane_two_points();
  auto d = canonical_divisor(z);
  auto mfs = fibrations(z, d);
  const MMPTrace* a = nullptr;
  const MMPTrace* b = nullptr;
  for (const auto& x : mfs)
    for (const auto& y : mfs)
      if (&x != &y && *x.base == *y.base && !(x.result.fan == y.result.fan)) a = &x, b = &y;
  REQUIRE(a != nullptr);
  auto chain = chain_or_report(z, d, *a, *b);
  REQUIRE(chain.links.size() == 1);
  const auto& l = chain.links.front();
  CHECK(l.type == LinkType::II);
  CHECK(l.case_tag == 4);
  CHECK(l.s == l.r);
  CHECK(l.t == l.r);
  CHECK(l.p.has_value());
  CHECK(l.q.has_value());
}

TEST_CASE("S x P1 and T x P1 over the cone over a quadric: a link of type IVs") {
  Fan z = product(catalog::pyramid_small_s(), catalog::projective_line());
  auto d = canonical_divisor(z);
  d[z.ray_index(LatticeVector{1, 0, -1, 0})] += Rational(1, 2);  // negative on the flopping curve
  const Fan s = catalog::pyramid_small_s(), t = catalog::pyramid_small_t();
  std::optional<MMPTrace> to_s, to_t;
  for (std::uint64_t seed = 0; seed < 64 && !(to_s && to_t); ++seed) {
    auto run = run_mmp(z, d, Strategy{Strategy::Kind::seeded_random, seed});
    if (run.outcome != MMPOutcome::mori_fiber_space || run.base->fan.rank != 3) continue;
    if (run.base->fan == s) to_s = run;
    if (run.base->fan == t) to_t = run;
  }
  REQUIRE(to_s);
  REQUIRE(to_t);
  auto chain = chain_or_report(z, d, *to_s, *to_t);
  CHECK(verify_chain(chain).ok());
  REQUIRE(chain.links.size() == 1);
  const auto& l = chain.links.front();
  CHECK(l.type == LinkType::IVs);
  CHECK(l.case_tag == 7);
  CHECK_FALSE(is_simplicial(l.r.fan));
  CHECK(l.r.fan == catalog::pyramid());
  CHECK(l.s.fan.rank == l.r.fan.rank);
  CHECK(l.t.fan.rank == l.r.fan.rank);
  REQUIRE(l.flops.size() == 1);
  CHECK(sgn(dot(pushforward(z, l.flops[0].source.fan, l.dagger), l.flops[0].relation)) == 0);
}

namespace {

// Same fan with its rays listed in reverse order.
Fan reversed_rays(const Fan& f) {
  Fan g;
  g.rank = f.rank;
  g.rays.assign(f.rays.rbegin(), f.rays.rend());
  const std::size_t n = f.rays.size();
  for (auto c : f.max_cones) {
    for (auto& i : c) i = n - 1 - i;
    std::sort(c.begin(), c.end());
    g.max_cones.push_back(c);
  }
  return g;
}

std::multiset<std::string> link_types(const SarkisovChain& c) {
  std::multiset<std::string> out;
  for (const auto& l : c.links) out.insert(to_string(l.type));
  return out;
}

}  // namespace

TEST_CASE("chains do not depend on the order of the rays") {
  for (const char* name : {"F1", "P1xP1", "Bl2P2"}) {
    CAPTURE(std::string(name));
    Fan z = catalog::by_name(name), w = reversed_rays(z);
    REQUIRE(w.rays != canonical(w).rays);
    auto mz = fibrations(z, canonical_divisor(z));
    auto mw = fibrations(w, canonical_divisor(w));
    REQUIRE(mz.size() >= 2);
    REQUIRE(mw.size() == mz.size());
    for (const auto& t : mw) CHECK(verify_output(t).ok());
    auto a = chain_or_report(w, canonical_divisor(w), mw[0], mw[1]);
    CHECK(verify_chain(a).ok());
    // The same pair of outputs, found on the canonical fan.
    std::size_t i = 0, j = 0;
    for (std::size_t k = 0; k < mz.size(); ++k) {
      if (mz[k].result.fan == canonical(mw[0].result.fan) && *mz[k].base == *mw[0].base) i = k;
      if (mz[k].result.fan == canonical(mw[1].result.fan) && *mz[k].base == *mw[1].base) j = k;
    }
    REQUIRE(i != j);
    CHECK(link_types(a) == link_types(chain_or_report(z, canonical_divisor(z), mz[i], mz[j])));
  }
}
