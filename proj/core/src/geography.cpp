#include "toric/geography.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <thread>

namespace toric {

namespace {

template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&, j] {
      try {
        for (std::size_t i = j; i < count; i += jobs) body(i);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Projection of {(s,t,m) : (s,t) in B, m in P_{D(s,t)}} to (s,t).
std::vector<RationalPoint> effective_region(const Fan& z, const TorusDivisor& origin, const TorusDivisor& u,
                                            const TorusDivisor& w, const Polyhedron& region) {
  const std::size_t n = z.rank;
  Polyhedron lifted;
  lifted.dim = n + 2;
  for (const auto& ineq : region.inequalities) {
    RationalPoint a(n + 2, Rational(0));
    a[0] = ineq.normal[0];
    a[1] = ineq.normal[1];
    lifted.inequalities.push_back({a, ineq.offset});
  }
  for (std::size_t r = 0; r < z.rays.size(); ++r) {
    RationalPoint a(n + 2, Rational(0));
    a[0] = u[r];
    a[1] = w[r];
    for (std::size_t i = 0; i < n; ++i) a[2 + i] = z.rays[r][i];
    lifted.inequalities.push_back({a, -origin[r]});
  }
  auto v = vertex_enumeration(lifted);
  if (!v.rays.empty() || !v.lines.empty()) throw InputError("chamber_decomposition: region must be bounded");
  std::vector<RationalPoint> proj;
  for (const auto& x : v.vertices) proj.push_back({x[0], x[1]});
  return convex_hull_2d(proj);
}

// Loci where n+1 facet hyperplanes of P_{D(s,t)} with spanning normals meet.
std::vector<Line2> candidate_walls(const Fan& z, const TorusDivisor& origin, const TorusDivisor& u,
                                   const TorusDivisor& w) {
  const std::size_t n = z.rank, s = z.rays.size();
  std::vector<Line2> out;
  if (s < n + 1) return out;
  std::vector<std::size_t> pick(n + 1);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    RatMatrix m(n, RationalPoint(n + 1));
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t i = 0; i < n; ++i) m[i][j] = z.rays[pick[j]][i];
    auto ker = kernel(m, n + 1);
    if (ker.size() == 1) {
      Line2 line{0, 0, 0};
      for (std::size_t j = 0; j <= n; ++j) {
        line.a += ker[0][j] * u[pick[j]];
        line.b += ker[0][j] * w[pick[j]];
        line.c += ker[0][j] * origin[pick[j]];
      }
      if (auto l = normalize_line(line)) out.push_back(*l);
    }
    // next combination
    std::size_t k = n + 1;
    while (k > 0 && pick[k - 1] == s - (n + 1) + (k - 1)) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j <= n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

}  // namespace

TorusDivisor GeographySlice::divisor_at(const RationalPoint& st) const {
  return add(origin, add(scale(dir_s, st[0]), scale(dir_t, st[1])));
}

std::optional<std::size_t> GeographySlice::find_chamber(const ToricModel& m) const {
  for (std::size_t i = 0; i < chambers.size(); ++i)
    if (chambers[i].model == m) return i;
  return std::nullopt;
}

std::vector<std::size_t> GeographySlice::shared_vertices(std::size_t a, std::size_t b) const {
  std::vector<std::size_t> out;
  const auto& va = chambers[a].vertices;
  const auto& vb = chambers[b].vertices;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(out));
  return out;
}

int GeographySlice::intersection_dim(std::size_t a, std::size_t b) const {
  auto shared = shared_vertices(a, b);
  if (shared.empty()) return -1;
  RatMatrix diffs;
  for (std::size_t i = 1; i < shared.size(); ++i) diffs.push_back(sub(points[shared[i]], points[shared[0]]));
  return static_cast<int>(rank(diffs, 2));
}

bool GeographySlice::in_region_interior(const RationalPoint& st) const { return region.strictly_contains(st); }

Rational GeographySlice::effective_area() const {
  return effective.size() >= 3 ? polygon_area(effective) : Rational(0);
}

GeographySlice chamber_decomposition(const Fan& z, const TorusDivisor& origin, const TorusDivisor& dir_s,
                                     const TorusDivisor& dir_t, const Polyhedron& region, unsigned jobs) {
  if (origin.size() != z.rays.size() || dir_s.size() != z.rays.size() || dir_t.size() != z.rays.size())
    throw InputError("chamber_decomposition: slice divisors do not match the fan");
  if (region.dim != 2) throw InputError("chamber_decomposition: region must be 2-dimensional");
  if (!is_complete(z) || !is_simplicial(z)) throw InputError("chamber_decomposition: fan must be complete and simplicial");

  GeographySlice g;
  g.base = z;
  g.origin = origin;
  g.dir_s = dir_s;
  g.dir_t = dir_t;
  g.region = region;
  g.region_polygon = convex_hull_2d(vertex_enumeration(region).vertices);
  g.effective = effective_region(z, origin, dir_s, dir_t, region);
  if (g.effective.empty()) return g;

  auto lines = candidate_walls(z, origin, dir_s, dir_t);
  std::vector<Stratum> cells, edges;
  if (g.effective.size() >= 3) {
    auto arr = line_arrangement_2d(lines, g.effective);
    g.points = arr.vertices;
    for (const auto& c : arr.cells) cells.push_back(Stratum{2, c.vertices, c.interior_point, 0, {}});
    for (const auto& e : arr.edges) {
      Stratum st{1, {e.v0, e.v1}, scale(add(arr.vertices[e.v0], arr.vertices[e.v1]), Rational(1, 2)), 0, {}};
      st.cells = e.cells;
      edges.push_back(std::move(st));
    }
  } else if (g.effective.size() == 2) {
    const RationalPoint& a = g.effective[0];
    RationalPoint d = sub(g.effective[1], a);
    std::set<Rational> cuts{Rational(0), Rational(1)};
    for (const auto& l : lines) {
      Rational slope = l.a * d[0] + l.b * d[1];
      if (sgn(slope) == 0) continue;
      Rational tpar = -l.eval(a) / slope;
      if (sgn(tpar) > 0 && tpar < 1) cuts.insert(tpar);
    }
    for (const auto& tpar : cuts) g.points.push_back(axpy(a, tpar, d));
    for (std::size_t i = 0; i + 1 < g.points.size(); ++i)
      edges.push_back(Stratum{1, {i, i + 1}, scale(add(g.points[i], g.points[i + 1]), Rational(1, 2)), 0, {}});
  } else {
    g.points = g.effective;
  }
  for (std::size_t i = 0; i < g.points.size(); ++i) g.strata.push_back(Stratum{0, {i}, g.points[i], 0, {}});
  const std::size_t cell_base = g.points.size() + edges.size();
  for (auto& e : edges) {
    for (auto& c : e.cells) c += cell_base;
    g.strata.push_back(std::move(e));
  }
  for (auto& c : cells) g.strata.push_back(std::move(c));

  std::vector<AmpleModel> models(g.strata.size());
  parallel_for(g.strata.size(), jobs, [&](std::size_t i) { models[i] = ample_model(z, g.divisor_at(g.strata[i].sample)); });

  std::map<std::string, std::size_t> by_key;
  for (std::size_t i = 0; i < g.strata.size(); ++i) {
    std::string key = model_key(models[i].model);
    auto [it, fresh] = by_key.emplace(key, g.chambers.size());
    if (fresh) {
      Chamber c;
      c.model = models[i].model;
      c.key = key;
      c.dim = -1;
      c.big = models[i].model.fan.rank == z.rank;
      g.chambers.push_back(std::move(c));
    }
    Chamber& c = g.chambers[it->second];
    g.strata[i].chamber = it->second;
    c.strata.push_back(i);
    if (g.strata[i].dim > c.dim) {
      c.dim = g.strata[i].dim;
      c.sample = g.strata[i].sample;
    }
    c.vertices.insert(c.vertices.end(), g.strata[i].vertices.begin(), g.strata[i].vertices.end());
  }
  for (auto& c : g.chambers) {
    std::sort(c.vertices.begin(), c.vertices.end());
    c.vertices.erase(std::unique(c.vertices.begin(), c.vertices.end()), c.vertices.end());
    std::vector<RationalPoint> pts;
    for (auto v : c.vertices) pts.push_back(g.points[v]);
    c.closure = convex_hull_2d(pts);
    c.area = c.dim == 2 ? polygon_area(c.closure) : Rational(0);
  }
  for (std::size_t a = 0; a < g.chambers.size(); ++a)
    for (std::size_t b = 0; b < g.chambers.size(); ++b)
      if (a != b && !g.shared_vertices(a, b).empty()) g.chambers[a].neighbors.push_back(b);
  return g;
}

SliceReport verify_span_picard(const GeographySlice& g, std::uint64_t seed) {
  SliceReport rep;
  auto fail = [&](std::string m) { rep.failures.push_back(std::move(m)); };
  const std::size_t n = g.base.rank;

  Rational total = 0;
  for (std::size_t i = 0; i < g.chambers.size(); ++i) {
    const auto& c = g.chambers[i];
    const std::string tag = "chamber " + std::to_string(i) + ": ";
    if (c.dim == 2) {
      total += c.area;
      if (!c.model.birational()) fail(tag + "2-dimensional chamber with a non-birational model");
      if (!is_simplicial(c.model.fan)) fail(tag + "2-dimensional chamber with a non-Q-factorial model");
      std::vector<std::size_t> partners = c.neighbors;
      partners.push_back(i);
      for (auto j : partners) {
        // Only chambers with a relatively open piece A_j inside C_i, away from the edge of B.
        bool inside = std::any_of(g.chambers[j].strata.begin(), g.chambers[j].strata.end(), [&](std::size_t s) {
          const auto& vs = g.strata[s].vertices;
          return g.in_region_interior(g.strata[s].sample) &&
                 std::all_of(vs.begin(), vs.end(), [&](std::size_t v) {
                   return std::binary_search(c.vertices.begin(), c.vertices.end(), v);
                 });
        });
        if (!inside) continue;
        const auto& other = g.chambers[j].model;
        long lhs = static_cast<long>(picard_number(c.model.fan)) - static_cast<long>(picard_number(other.fan));
        long rhs = 2 - g.intersection_dim(i, j);
        if (lhs != rhs)
          fail(tag + "Picard formula fails against chamber " + std::to_string(j) + ": " + std::to_string(lhs) +
               " != " + std::to_string(rhs));
        if (other.fan.rank > 0 && !make_morphism(c.model, other, other.lattice_map))
          fail(tag + "no contraction to the model of chamber " + std::to_string(j));
      }
    } else {
      bool interior = std::any_of(c.strata.begin(), c.strata.end(),
                                  [&](std::size_t s) { return g.in_region_interior(g.strata[s].sample); });
      if (interior && c.model.birational() && c.model.fan.rank == n && is_simplicial(c.model.fan))
        fail(tag + "lower-dimensional interior chamber with a birational Q-factorial model");
    }
  }
  if (total != g.effective_area()) fail("chamber areas do not add up to the area of E(B)");

  // resample each chamber
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> weight(1, 97);
  for (std::size_t i = 0; i < g.chambers.size(); ++i) {
    const auto& c = g.chambers[i];
    const Stratum* top = nullptr;
    for (auto s : c.strata)
      if (g.strata[s].dim == c.dim) top = &g.strata[s];
    if (top == nullptr || top->dim == 0) continue;
    for (int k = 0; k < 3; ++k) {
      RationalPoint p{0, 0};
      Rational wsum = 0;
      for (auto v : top->vertices) {
        Rational wv(weight(rng));
        p = axpy(p, wv, g.points[v]);
        wsum += wv;
      }
      p = scale(p, Rational(1) / wsum);
      if (!(ample_model(g.base, g.divisor_at(p)).model == c.model))
        fail("chamber " + std::to_string(i) + ": ample model changes at a resampled point");
    }
  }
  return rep;
}

}  // namespace toric

namespace toric {

namespace {

ToricModel identity_model(const Fan& f) { return birational_model(f); }

struct TraceData {
  ToricModel x, s;
  TorusDivisor pulled_base;  // φ^*C on X
};

TraceData trace_data(const Fan& z, const MMPTrace& t) {
  if (t.outcome != MMPOutcome::mori_fiber_space || !t.base)
    throw InputError("build_slice: trace does not end in a Mori fiber space");
  if (!(t.start.fan == z)) throw InputError("build_slice: trace does not start on Z");
  TraceData d{identity_model(t.result.fan), *t.base, {}};
  d.pulled_base = pullback(d.x.fan, *t.base, t.base_ample);
  return d;
}

// Least lambda >= 0 with -D_X + lambda φ^*C nef on X; nullopt when -D_X is not
// ample over the base.
std::optional<Rational> minimal_scale(const TraceData& td, const TorusDivisor& dx) {
  Rational lambda = 0;
  for (const auto& w : walls(td.x.fan)) {
    Rational a = -dot(dx, w.relation), b = dot(td.pulled_base, w.relation);
    if (sgn(b) == 0) {
      if (sgn(a) <= 0) return std::nullopt;
    } else {
      Rational need = -a / b;
      if (need > lambda) lambda = need;
    }
  }
  return lambda;
}

}  // namespace

SarkisovSlice build_slice(const Fan& z, const TorusDivisor& d, const MMPTrace& trace_f, const MMPTrace& trace_g,
                          const SliceOptions& options) {
  if (d.size() != z.rays.size()) throw InputError("build_slice: divisor does not match the fan");
  const TraceData tf = trace_data(z, trace_f), tg = trace_data(z, trace_g);
  const ToricModel zm = identity_model(z);
  const std::size_t r = picard_number(z);

  // Ample generators of N^1: k A' + (ray divisor) for the rays off one maximal cone.
  auto cert = is_projective(z);
  if (!cert.projective()) throw InputError("build_slice: Z is not projective");
  auto m = lp_feasible(section_polytope(z, *cert.ample_divisor)).point;
  TorusDivisor a0 = add(*cert.ample_divisor, principal_divisor(z, *m));
  std::vector<std::size_t> free_rays;
  for (std::size_t i = 0; i < z.rays.size(); ++i)
    if (!std::binary_search(z.max_cones[0].begin(), z.max_cones[0].end(), i)) free_rays.push_back(i);
  std::vector<TorusDivisor> h;
  for (Rational k = 1;; k *= 2) {
    if (k > Rational(1L << 40)) throw EngineError("build_slice: no ample basis of N^1 found");
    h.clear();
    RatMatrix classes;
    bool ample = true;
    for (auto i : free_rays) {
      TorusDivisor hi = scale(a0, k);
      hi[i] += 1;
      ample = ample && is_ample(z, hi);
      classes.push_back(numerical_class(z, hi).coords);
      h.push_back(std::move(hi));
    }
    if (ample && rank(classes, r) == r) break;
  }
  TorusDivisor hsum = zero_divisor(z);
  for (const auto& hi : h) hsum = add(hsum, hi);

  // Pick epsilon as large as negativity allows and lambda just above its
  // threshold, preferring choices where H + H_{r+1} and H + H_{r+2} are ample on Z.
  auto lifted = [&](const TraceData& td, const TorusDivisor& dh, const Rational& lambda) {
    return pullback(z, td.x, axpy(scale(pushforward(z, td.x.fan, dh), Rational(-1)), lambda, td.pulled_base));
  };
  std::optional<std::pair<Rational, Rational>> fallback;  // (eps, margin)
  std::optional<std::pair<Rational, Rational>> chosen;
  Rational eps = 1;
  for (int j = 0; j < 48 && !chosen; ++j) {
    eps /= 2;
    auto dh = axpy(d, eps, hsum);
    auto dz = pushforward(z, zm.fan, dh);  // zm lists the rays in canonical order
    if (!pullback_compare(zm, tf.x, dz).negative || !pullback_compare(zm, tg.x, dz).negative) continue;
    auto mf = minimal_scale(tf, pushforward(z, tf.x.fan, dh));
    auto mg = minimal_scale(tg, pushforward(z, tg.x.fan, dh));
    if (!mf || !mg) continue;
    if (!fallback) fallback.emplace(eps, Rational(1));
    Rational margin = 1;
    for (int i = 0; i < 24; ++i, margin /= 2) {
      auto hf = lifted(tf, dh, *mf + margin), hg = lifted(tg, dh, *mg + margin);
      auto eh = scale(hsum, eps);
      if (is_ample(z, add(eh, hf)) && is_ample(z, add(eh, hg))) {
        chosen.emplace(eps, margin);
        break;
      }
    }
  }
  if (!chosen) chosen = fallback;
  if (!chosen) throw EngineError("build_slice: no epsilon keeps both maps negative");
  eps = chosen->first;
  const TorusDivisor dh = axpy(d, eps, hsum);
  std::vector<TorusDivisor> gens;
  for (const auto& hi : h) gens.push_back(scale(hi, eps));
  gens.push_back(lifted(tf, dh, *minimal_scale(tf, pushforward(z, tf.x.fan, dh)) + chosen->second));
  gens.push_back(lifted(tg, dh, *minimal_scale(tg, pushforward(z, tg.x.fan, dh)) + chosen->second));
  for (auto [gen, base] : {std::pair{&gens[r], &tf.s}, std::pair{&gens[r + 1], &tg.s}}) {
    auto got = ample_model(z, add(dh, *gen)).model;
    if (!(got == *base))
      throw EngineError("build_slice: lifted divisor has ample model " + model_key(got) + ", expected the base " +
                        model_key(*base));
  }

  const Rational a(2 * static_cast<long>(r + 2));
  const long q = options.denominator;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<long> draw(1, q);
  auto small = [&] {
    Rational x(draw(rng), q * q);
    x.canonicalize();
    return x;
  };

  std::vector<std::string> certificates;
  for (std::size_t attempt = 1; attempt <= options.retries; ++attempt) {
    TorusDivisor origin = d, u = zero_divisor(z), w = zero_divisor(z);
    Polyhedron region;
    region.dim = 2;
    Rational sum_d = 0, sum_u = 0, sum_w = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Rational di = small(), ui = small(), wi = small();
      if (i != r + 1) ui += 1;
      if (i != r) wi += 1;
      origin = axpy(origin, di, gens[i]);
      u = axpy(u, ui, gens[i]);
      w = axpy(w, wi, gens[i]);
      region.inequalities.push_back({{ui, wi}, -di});
      sum_d += di, sum_u += ui, sum_w += wi;
    }
    region.inequalities.push_back({{-sum_u, -sum_w}, sum_d - a});

    SarkisovSlice out;
    out.slice = chamber_decomposition(z, origin, u, w, region, options.jobs);
    out.divisor = d;
    out.x = tf.x;
    out.y = tg.x;
    out.s = tf.s;
    out.t = tg.s;
    out.attempts = attempt;
    out.seed = options.seed;
    auto report = verify_slice_properties(out);
    auto span = verify_span_picard(out.slice, options.seed + attempt);
    report.failures.insert(report.failures.end(), span.failures.begin(), span.failures.end());
    if (report.ok()) {
      try {
        const auto& g = out.slice;
        nonbig_boundary_arc(g, *g.find_chamber(out.s), *g.find_chamber(out.t), g.find_chamber(out.x),
                            g.find_chamber(out.y));
        return out;
      } catch (const GenericityError& e) {
        report.failures.push_back(e.what());
      }
    }
    for (const auto& f : report.failures) certificates.push_back("attempt " + std::to_string(attempt) + ": " + f);
  }
  throw GenericityError("build_slice: no admissible slice after " + std::to_string(options.retries) + " attempts",
                        std::move(certificates));
}

SliceReport verify_slice_properties(const SarkisovSlice& s) {
  SliceReport rep;
  const auto& g = s.slice;
  auto fail = [&](std::string m) { rep.failures.push_back(std::move(m)); };
  if (g.effective.empty()) {
    fail("E(B) is empty");
    return rep;
  }
  for (const auto& v : g.effective)
    if (!is_ample(g.base, sub(g.divisor_at(v), s.divisor)))
      fail("D' - D is not ample at E(B) vertex (" + to_string(v) + ")");

  auto fx = g.find_chamber(s.x), fy = g.find_chamber(s.y);
  auto fs = g.find_chamber(s.s), ft = g.find_chamber(s.t);
  for (auto [c, name] : {std::pair{fs, "phi f"}, std::pair{ft, "psi g"}}) {
    if (!c) {
      fail(std::string("no chamber for ") + name);
      continue;
    }
    const auto& ch = g.chambers[*c];
    if (std::none_of(ch.strata.begin(), ch.strata.end(),
                     [&](std::size_t i) { return g.in_region_interior(g.strata[i].sample); }))
      fail(std::string("chamber of ") + name + " lies in the boundary of B");
    if (ch.dim != 1) fail(std::string("chamber of ") + name + " has dimension " + std::to_string(ch.dim));
  }
  for (auto [c, name] : {std::pair{fx, "f"}, std::pair{fy, "g"}})
    if (!c || g.chambers[*c].dim != 2) fail(std::string("chamber of ") + name + " is not 2-dimensional");

  // The non-big strata form one connected piece (closures meet at vertices).
  std::vector<std::size_t> parent(g.points.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  std::set<std::size_t> touched;
  for (const auto& st : g.strata) {
    if (g.chambers[st.chamber].big) continue;
    for (auto v : st.vertices) {
      touched.insert(v);
      parent[root(v)] = root(st.vertices.front());
    }
  }
  std::set<std::size_t> roots;
  for (auto v : touched) roots.insert(root(v));
  if (roots.size() != 1) fail("the non-big locus has " + std::to_string(roots.size()) + " components");
  return rep;
}

BoundaryArc nonbig_boundary_arc(const GeographySlice& g, std::size_t from, std::size_t to,
                                std::optional<std::size_t> from_total, std::optional<std::size_t> to_total) {
  BoundaryArc arc;
  if (from == to && from_total == to_total) return arc;
  std::vector<std::size_t> boundary;
  for (std::size_t i = 0; i < g.strata.size(); ++i)
    if (g.strata[i].dim == 1 && g.strata[i].cells.size() == 1) boundary.push_back(i);
  if (boundary.size() < 3) throw GenericityError("no non-big boundary arc joins the Mori fiber space chambers", {"E(B) is not a polygon"});

  // Walk the boundary cycle.
  std::vector<std::size_t> cycle{boundary.front()}, joints;
  std::set<std::size_t> used{boundary.front()};
  std::size_t at = g.strata[boundary.front()].vertices[1];
  while (cycle.size() < boundary.size()) {
    auto next = std::find_if(boundary.begin(), boundary.end(), [&](std::size_t e) {
      const auto& v = g.strata[e].vertices;
      return !used.count(e) && (v[0] == at || v[1] == at);
    });
    if (next == boundary.end()) throw EngineError("nonbig_boundary_arc: boundary is not a cycle");
    joints.push_back(at);
    const auto& v = g.strata[*next].vertices;
    at = v[0] == at ? v[1] : v[0];
    used.insert(*next);
    cycle.push_back(*next);
  }
  joints.push_back(at);  // joints[i] lies between cycle[i] and cycle[i+1]
  const std::size_t m = cycle.size();

  auto member = [&](std::size_t edge, std::size_t chamber, std::optional<std::size_t> total) {
    const auto& st = g.strata[edge];
    return st.chamber == chamber && (!total || g.strata[st.cells.front()].chamber == *total);
  };
  auto runs_of = [&](std::size_t chamber, std::optional<std::size_t> total) {
    std::vector<std::pair<std::size_t, std::size_t>> runs;  // [first, last] cyclic
    for (std::size_t i = 0; i < m; ++i) {
      if (member(cycle[i], chamber, total) && !member(cycle[(i + m - 1) % m], chamber, total)) {
        std::size_t j = i;
        while (member(cycle[(j + 1) % m], chamber, total)) j = (j + 1) % m;
        runs.emplace_back(i, j);
      }
    }
    return runs;
  };
  auto rf = runs_of(from, from_total), rt = runs_of(to, to_total);
  if (rf.size() != 1 || rt.size() != 1)
    throw GenericityError("no non-big boundary arc joins the Mori fiber space chambers", {"Mori fiber space chamber is not one boundary segment"});

  auto nonbig = [&](std::size_t stratum) { return !g.chambers[g.strata[stratum].chamber].big; };
  // Forward: from the last from-edge to the first to-edge; backward: mirrored.
  auto build = [&](bool forward) -> std::optional<BoundaryArc> {
    BoundaryArc a;
    std::size_t i = forward ? rf[0].second : rf[0].first;
    std::size_t stop = forward ? rt[0].first : rt[0].second;
    a.edges.push_back(cycle[i]);
    while (i != stop) {
      std::size_t joint = forward ? joints[i] : joints[(i + m - 1) % m];
      i = forward ? (i + 1) % m : (i + m - 1) % m;
      if (!nonbig(joint) || !nonbig(cycle[i])) return std::nullopt;
      if (member(cycle[i], from, from_total)) return std::nullopt;
      a.vertices.push_back(joint);
      a.edges.push_back(cycle[i]);
    }
    for (std::size_t k = 0; k < a.vertices.size(); ++k) {
      auto key = [&](std::size_t e) {
        return std::pair{g.strata[g.strata[e].cells.front()].chamber, g.strata[e].chamber};
      };
      if (key(a.edges[k]) != key(a.edges[k + 1])) a.link_vertices.push_back(a.vertices[k]);
    }
    return a;
  };
  auto fwd = build(true), bwd = build(false);
  if (fwd && bwd) return fwd->vertices.size() <= bwd->vertices.size() ? *fwd : *bwd;
  if (fwd) return *fwd;
  if (bwd) return *bwd;
  throw GenericityError("no non-big boundary arc joins the Mori fiber space chambers", {"both boundary arcs between the chambers leave the non-big locus"});
}

GeographySlice corpus_slice(const Fan& z, std::uint64_t seed, unsigned jobs) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dir(-3, 3), jitter(-4, 4);
  Polyhedron box;
  box.dim = 2;
  box.inequalities = {{{1, 0}, -1}, {{-1, 0}, -1}, {{0, 1}, -1}, {{0, -1}, -1}};
  for (int attempt = 0; attempt < 1000; ++attempt) {
    TorusDivisor origin = canonical_divisor(z), u(z.rays.size()), w(z.rays.size());
    for (std::size_t i = 0; i < z.rays.size(); ++i) {
      Rational j(jitter(rng), 64);
      j.canonicalize();
      origin[i] = -origin[i] + j;
      u[i] = dir(rng);
      w[i] = dir(rng);
    }
    // Reject slices through the numerically trivial class.
    auto no = numerical_class(z, origin).coords, nu = numerical_class(z, u).coords,
         nw = numerical_class(z, w).coords;
    RatMatrix sys;
    for (std::size_t i = 0; i < no.size(); ++i) sys.push_back({nu[i], nw[i]});
    auto sol = solve_linear(sys, scale(no, Rational(-1)), 2);
    if (sol.feasible) {
      Polyhedron hit = box;
      for (std::size_t i = 0; i < sys.size(); ++i) {
        hit.inequalities.push_back({sys[i], -no[i]});
        hit.inequalities.push_back({scale(sys[i], Rational(-1)), no[i]});
      }
      if (lp_feasible(hit).feasible()) continue;
    }
    auto g = chamber_decomposition(z, origin, u, w, box, jobs);
    if (g.effective.size() >= 3) return g;
  }
  throw GenericityError("corpus_slice: no admissible slice", {});
}

}  // namespace toric
