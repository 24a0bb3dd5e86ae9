#include "toric/mmp.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "toric/polyhedron.hpp"

namespace toric {

namespace {

bool in_cone(const Cone& c, std::size_t i) { return std::binary_search(c.begin(), c.end(), i); }

ToricModel as_model(const Fan& f) { return ToricModel{f, identity_matrix(f.rank)}; }

}  // namespace

MoriCone mori_cone(const Fan& f) {
  MoriCone mc;
  mc.walls = walls(f);
  if (mc.walls.empty()) return mc;
  // Coordinates off one maximal cone identify the relation space with Q^rho.
  const Cone& base = f.max_cones.front();
  std::vector<std::size_t> coords;
  for (std::size_t r = 0; r < f.rays.size(); ++r)
    if (!in_cone(base, r)) coords.push_back(r);

  std::map<LatticeVector, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < mc.walls.size(); ++i) {
    LatticeVector proj;
    for (auto r : coords) proj.push_back(mc.walls[i].relation[r]);
    classes[primitive(proj)].push_back(i);
  }
  std::vector<LatticeVector> dirs;
  std::vector<RationalPoint> gens;
  for (const auto& [dir, ids] : classes) {
    dirs.push_back(dir);
    gens.push_back(to_rational(dir));
  }
  for (auto k : extreme_generators(gens, coords.size())) {
    ExtremalRay ray;
    ray.walls = classes[dirs[k]];
    ray.relation = mc.walls[ray.walls.front()].relation;
    for (auto w : ray.walls)
      if (mc.walls[w].relation != ray.relation)
        throw EngineError("mori_cone: walls of one extremal ray carry different relations");
    mc.rays.push_back(std::move(ray));
  }
  std::sort(mc.rays.begin(), mc.rays.end(),
            [](const ExtremalRay& a, const ExtremalRay& b) { return a.relation < b.relation; });
  return mc;
}

AmpleModel ample_model(const Fan& f, const TorusDivisor& d) {
  const std::size_t n = f.rank;
  auto v = vertex_enumeration(section_polytope(f, d));
  if (v.empty()) throw InputError("not pseudo-effective");
  if (!v.rays.empty() || !v.lines.empty()) throw InputError("ample_model: section polytope is unbounded");

  const auto& verts = v.vertices;
  RatMatrix diffs;
  for (std::size_t i = 1; i < verts.size(); ++i) diffs.push_back(sub(verts[i], verts[0]));
  const std::size_t k = rank(diffs, n);

  AmpleModel out;
  IntMatrix lmap;
  std::vector<RationalPoint> coords;  // vertices in the lattice of the affine span
  if (k == n) {
    lmap = identity_matrix(n);
    out.translation = RationalPoint(n, Rational(0));
    coords = verts;
  } else {
    lmap = k == 0 ? IntMatrix{} : saturated_span(diffs, n);
    out.translation = verts[0];
    RatMatrix lt = k == 0 ? RatMatrix(n, RationalPoint{}) : transpose(to_rational(lmap), n);
    for (const auto& u : verts) {
      auto sol = solve_linear(lt, sub(u, verts[0]), k);
      if (!sol.feasible) throw EngineError("ample_model: vertex outside the affine span");
      coords.push_back(sol.particular);
    }
  }
  if (k == 0) {
    Fan point;
    point.rank = 0;
    point.max_cones = {Cone{}};
    out.model = ToricModel{point, lmap};
    return out;
  }

  // Facet normals of the projected polytope: primitive images of the rays
  // whose minimizing face has codimension one.
  std::set<LatticeVector> facet_dirs;
  for (const auto& r : f.rays) {
    LatticeVector w = mat_vec(lmap, r);
    if (is_zero(w)) continue;
    w = primitive(w);
    Rational lo = dot(coords[0], w);
    for (const auto& c : coords) lo = std::min(lo, dot(c, w));
    RatMatrix face;
    RationalPoint first;
    for (const auto& c : coords)
      if (dot(c, w) == lo) {
        if (first.empty()) first = c;
        else face.push_back(sub(c, first));
      }
    if (rank(face, k) + 1 == k) facet_dirs.insert(w);
  }
  Fan g;
  g.rank = k;
  g.rays.assign(facet_dirs.begin(), facet_dirs.end());
  std::vector<Rational> offsets;
  for (const auto& w : g.rays) {
    Rational lo = dot(coords[0], w);
    for (const auto& c : coords) lo = std::min(lo, dot(c, w));
    offsets.push_back(lo);
  }
  for (const auto& c : coords) {
    Cone cone;
    for (std::size_t j = 0; j < g.rays.size(); ++j)
      if (dot(c, g.rays[j]) == offsets[j]) cone.push_back(j);
    g.max_cones.push_back(cone);
  }
  g = canonical(g);  // rays were already sorted; this orders the cones
  for (const auto& o : offsets) out.ample.push_back(-o);
  out.model = ToricModel{g, lmap};
  return out;
}

std::string to_string(ContractionKind k) {
  switch (k) {
    case ContractionKind::divisorial: return "divisorial";
    case ContractionKind::flip: return "flip";
    case ContractionKind::fiber: return "fiber";
  }
  return "?";
}

ContractionStep contract(const Fan& f, const ExtremalRay& ray) {
  auto mc = mori_cone(f);
  if (std::none_of(mc.rays.begin(), mc.rays.end(),
                   [&](const ExtremalRay& r) { return r.relation == ray.relation; }))
    throw InputError("contract: relation is not an extremal ray of the Mori cone");

  ContractionStep step;
  step.relation = ray.relation;
  for (std::size_t r = 0; r < ray.relation.size(); ++r) {
    if (sgn(ray.relation[r]) > 0) step.j_plus.push_back(r);
    if (sgn(ray.relation[r]) < 0) step.j_minus.push_back(r);
  }
  step.kind = step.j_minus.empty()       ? ContractionKind::fiber
              : step.j_minus.size() == 1 ? ContractionKind::divisorial
                                         : ContractionKind::flip;

  // Supporting divisor: trivial on the ray, positive on every other wall.
  Polyhedron lp;
  lp.dim = f.rays.size();
  for (const auto& w : mc.walls) {
    RationalPoint rel = to_rational(w.relation);
    if (w.relation == ray.relation) {
      lp.inequalities.push_back({rel, 0});
      lp.inequalities.push_back({scale(rel, Rational(-1)), 0});
    } else {
      lp.inequalities.push_back({rel, 1});
    }
  }
  auto sol = lp_feasible(lp);
  if (!sol.feasible()) throw InputError("contract: no supporting divisor for the ray");
  auto am = ample_model(f, *sol.point);

  step.source = as_model(f);
  step.target = am.model;
  step.target_ample = am.ample;

  const Fan& t = am.model.fan;
  switch (step.kind) {
    case ContractionKind::fiber:
      if (t.rank >= f.rank) throw EngineError("contract: fiber contraction did not drop dimension");
      break;
    case ContractionKind::divisorial: {
      if (!am.model.birational() || t.rays.size() + 1 != f.rays.size() ||
          t.ray_index(f.rays[step.j_minus[0]]) != t.rays.size())
        throw EngineError("contract: divisorial target does not drop exactly the negative ray");
      break;
    }
    case ContractionKind::flip:
      if (!am.model.birational() || t.rays.size() != f.rays.size() || is_simplicial(t))
        throw EngineError("contract: small contraction target has unexpected shape");
      step.flipped = flip(f, step);
      break;
  }
  return step;
}

ToricModel flip(const Fan& f, const ContractionStep& step) {
  if (step.kind != ContractionKind::flip) throw InputError("flip: step is not a small contraction");
  const auto& c = step.relation;
  std::vector<std::size_t> j;
  for (std::size_t r = 0; r < c.size(); ++r)
    if (sgn(c[r]) != 0) j.push_back(r);

  std::set<Cone> cones(f.max_cones.begin(), f.max_cones.end());
  // J_0 parts of the walls in the class.
  LatticeVector opposite = c;
  for (auto& x : opposite) x = -x;
  std::set<Cone> links;
  for (const auto& w : walls(f)) {
    if (w.relation != c && w.relation != opposite) continue;
    Cone k;
    for (auto r : w.face)
      if (sgn(c[r]) == 0) k.push_back(r);
    links.insert(k);
  }
  if (links.empty()) throw InputError("flip: the relation has no walls in this fan");

  auto cone_without = [&](const Cone& k, std::size_t drop) {
    Cone out = k;
    for (auto r : j)
      if (r != drop) out.push_back(r);
    std::sort(out.begin(), out.end());
    return out;
  };
  // Which side of the circuit is present decides the direction.
  const Cone& k0 = *links.begin();
  bool plus_side = std::all_of(step.j_plus.begin(), step.j_plus.end(),
                               [&](std::size_t i) { return cones.count(cone_without(k0, i)) > 0; });
  const auto& remove = plus_side ? step.j_plus : step.j_minus;
  const auto& add = plus_side ? step.j_minus : step.j_plus;
  for (const auto& k : links) {
    for (auto i : remove) {
      auto it = cones.find(cone_without(k, i));
      if (it == cones.end()) throw EngineError("flip: circuit triangulation is incomplete");
      cones.erase(it);
    }
    for (auto i : add) cones.insert(cone_without(k, i));
  }
  Fan g;
  g.rank = f.rank;
  g.rays = f.rays;
  g.max_cones.assign(cones.begin(), cones.end());
  return as_model(g);
}

std::string to_string(MMPOutcome o) {
  return o == MMPOutcome::minimal_model ? "minimal_model" : "mori_fiber_space";
}

Strategy Strategy::parse(const std::string& name, std::uint64_t seed) {
  if (name == "deterministic-lex") return Strategy{Kind::deterministic_lex, seed};
  if (name == "seeded-random") return Strategy{Kind::seeded_random, seed};
  throw InputError("unknown strategy '" + name + "'");
}

std::string Strategy::name() const {
  return kind == Kind::deterministic_lex ? "deterministic-lex" : "seeded-random";
}

MMPTrace run_mmp(const Fan& z, const TorusDivisor& d, const Strategy& strategy, std::size_t iteration_cap) {
  if (d.size() != z.rays.size()) throw InputError("run_mmp: divisor length does not match the fan");
  if (!is_complete(z) || !is_simplicial(z)) throw InputError("run_mmp: fan must be complete and simplicial");
  if (!is_projective(z).projective()) throw InputError("run_mmp: fan is not projective");

  MMPTrace trace;
  trace.start = as_model(z);
  trace.divisor = d;
  std::mt19937_64 rng(strategy.seed);
  Fan x = z;
  for (std::size_t iter = 0;; ++iter) {
    if (iter >= iteration_cap) throw EngineError("run_mmp: iteration cap reached");
    TorusDivisor dx = pushforward(z, x, d);
    if (is_nef(x, dx)) {
      trace.outcome = MMPOutcome::minimal_model;
      trace.result = as_model(x);
      trace.result_divisor = dx;
      return trace;
    }
    auto mc = mori_cone(x);
    std::vector<const ExtremalRay*> negative;
    for (const auto& r : mc.rays)
      if (sgn(dot(dx, r.relation)) < 0) negative.push_back(&r);
    if (negative.empty()) throw EngineError("run_mmp: divisor is not nef but no extremal ray is negative");
    const ExtremalRay* pick = negative.front();
    if (strategy.kind == Strategy::Kind::seeded_random) pick = negative[rng() % negative.size()];

    ContractionStep step = contract(x, *pick);
    trace.steps.push_back(step);
    if (step.kind == ContractionKind::fiber) {
      trace.outcome = MMPOutcome::mori_fiber_space;
      trace.result = as_model(x);
      trace.result_divisor = dx;
      trace.base = step.target;
      trace.base_ample = step.target_ample;
      return trace;
    }
    x = step.kind == ContractionKind::divisorial ? step.target.fan : step.flipped->fan;
    if (!is_simplicial(x)) throw EngineError("run_mmp: non-simplicial intermediate fan: " + describe(x));
    if (!is_projective(x).projective())
      throw EngineError("run_mmp: non-projective intermediate fan: " + describe(x));
  }
}

std::vector<std::size_t> contracted_walls(const Fan& x, const ToricModel& base, const TorusDivisor& base_ample) {
  auto hx = pullback(x, base, base_ample);
  auto ws = walls(x);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ws.size(); ++i)
    if (sgn(dot(hx, ws[i].relation)) == 0) out.push_back(i);
  return out;
}

VerificationReport verify_output(const MMPTrace& trace) {
  VerificationReport rep;
  auto fail = [&](std::string msg) { rep.failures.push_back(std::move(msg)); };
  const Fan& z = trace.start.fan;
  const Fan& x = trace.result.fan;

  TorusDivisor dx;
  try {
    dx = pushforward(z, x, trace.divisor);
  } catch (const ToricError& e) {
    fail(std::string("result is not a birational contraction of the start: ") + e.what());
    return rep;
  }
  if (dx != trace.result_divisor) fail("recorded result divisor differs from the pushforward");

  // each step: selected ray is D-negative, kind matches the relation, flips reverse the sign
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    const std::string at = "step " + std::to_string(i) + ": ";
    TorusDivisor ds = pushforward(z, s.source.fan, trace.divisor);
    if (sgn(dot(ds, s.relation)) >= 0) fail(at + "contracted ray is not D-negative");
    std::size_t neg = 0;
    for (const auto& c : s.relation) neg += sgn(c) < 0;
    auto expect = neg == 0 ? ContractionKind::fiber : neg == 1 ? ContractionKind::divisorial : ContractionKind::flip;
    if (expect != s.kind) fail(at + "kind does not match the relation");
    if (s.kind == ContractionKind::flip) {
      if (!s.flipped) {
        fail(at + "flip without a flipped model");
        continue;
      }
      const Fan& g = s.flipped->fan;
      std::set<LatticeVector> r1(s.source.fan.rays.begin(), s.source.fan.rays.end());
      std::set<LatticeVector> r2(g.rays.begin(), g.rays.end());
      if (r1 != r2) fail(at + "flip changed the rays");
      // relation rewritten over the flipped fan's rays, with the opposite sign
      LatticeVector opposite(g.rays.size(), Integer(0));
      for (std::size_t r = 0; r < s.relation.size(); ++r)
        opposite[g.ray_index(s.source.fan.rays[r])] = -s.relation[r];
      auto ws = walls(g);
      bool found = std::any_of(ws.begin(), ws.end(), [&](const Wall& w) { return w.relation == opposite; });
      if (!found) fail(at + "flipped fan has no wall with the reversed relation");
      TorusDivisor dg = pushforward(z, g, trace.divisor);
      if (sgn(dot(dg, opposite)) <= 0) fail(at + "flipped wall is not D-positive");
    }
  }

  auto cmp = pullback_compare(trace.start, as_model(x), trace.divisor);
  if (!cmp.negative) fail("composite map is not D-negative");

  if (trace.outcome == MMPOutcome::minimal_model) {
    if (!is_nef(x, dx)) fail("pushforward of D is not nef on the minimal model");
    if (trace.base) fail("minimal model records a base");
    return rep;
  }
  if (!trace.base) {
    fail("Mori fiber space without a base");
    return rep;
  }
  const ToricModel& s = *trace.base;
  if (s.fan.rank >= x.rank) fail("base dimension is not smaller");
  if (picard_number(x) != picard_number(s.fan) + 1) fail("relative Picard number is not 1");
  if (s.fan.rank > 0 && !is_ample_by_convexity(s.fan, trace.base_ample)) fail("recorded base divisor is not ample");
  auto cw = contracted_walls(x, s, trace.base_ample);
  if (cw.empty()) fail("no curve is contracted to the base");
  auto ws = walls(x);
  for (auto i : cw)
    if (sgn(dot(dx, ws[i].relation)) >= 0) fail("-D is not relatively ample: wall " + std::to_string(i));
  if (s.fan.rank > 0 && !make_morphism(as_model(x), s, s.lattice_map).has_value())
    fail("projection to the base is not a fan morphism");
  return rep;
}

}  // namespace toric
