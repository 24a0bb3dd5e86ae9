#include "toric/sarkisov.hpp"

#include <algorithm>
#include <set>

namespace toric {

std::string to_string(WallCrossingKind::Tag t) {
  switch (t) {
    case WallCrossingKind::Tag::divisorial: return "divisorial";
    case WallCrossingKind::Tag::small_contraction: return "small-contraction";
    case WallCrossingKind::Tag::mori_fiber: return "mori-fiber";
    case WallCrossingKind::Tag::flop: return "flop";
  }
  return "?";
}

std::string to_string(LinkType t) {
  switch (t) {
    case LinkType::I: return "I";
    case LinkType::II: return "II";
    case LinkType::III: return "III";
    case LinkType::IVm: return "IVm";
    case LinkType::IVs: return "IVs";
  }
  return "?";
}

namespace {

Rational cross(const RationalPoint& a, const RationalPoint& b) { return a[0] * b[1] - a[1] * b[0]; }

bool contains_vertex(const std::vector<std::size_t>& sorted, std::size_t v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

std::size_t chamber_of_cell_next_to(const GeographySlice& g, std::size_t edge) {
  return g.strata[g.strata[edge].cells.front()].chamber;
}

TorusDivisor ample_on(const GeographySlice& g, const RationalPoint& st) {
  return ample_model(g.base, g.divisor_at(st)).ample;
}

// The map of models induced by the lattice maps: target = M * source.
std::optional<FanMorphism> induced_morphism(const ToricModel& source, const ToricModel& target) {
  const std::size_t ks = source.fan.rank, kt = target.fan.rank;
  IntMatrix m(kt, LatticeVector(ks, 0));
  for (std::size_t j = 0; j < kt; ++j) {
    RatMatrix a;
    for (const auto& row : source.lattice_map) a.push_back(to_rational(row));
    auto sol = solve_linear(transpose(a, source.base_rank()), to_rational(target.lattice_map[j]), ks);
    if (!sol.feasible) return std::nullopt;
    for (std::size_t i = 0; i < ks; ++i) {
      if (sol.particular[i].get_den() != 1) return std::nullopt;
      m[j][i] = sol.particular[i].get_num();
    }
  }
  return make_morphism(source, target, m);
}

bool trivial_on_contracted(const Fan& from, const ToricModel& to, const TorusDivisor& to_ample,
                           const TorusDivisor& d_from) {
  auto ws = walls(from);
  for (auto i : contracted_walls(from, to, to_ample))
    if (sgn(dot(d_from, ws[i].relation)) != 0) return false;
  return true;
}

WallCrossingKind classify_across(const GeographySlice& g, std::size_t f, std::size_t h, std::size_t edge) {
  const auto& cf = g.chambers[f];
  const auto& ch = g.chambers[h];
  if (cf.dim != 2) throw InputError("classify_wall: first chamber is not 2-dimensional");
  const auto& e = g.strata[edge];
  if (!g.in_region_interior(e.sample)) throw InputError("wall on slice boundary has no classification");
  const Fan& z = g.base;
  const TorusDivisor d_o = g.divisor_at(e.sample);
  const bool on_boundary = e.cells.size() == 1;

  WallCrossingKind w;
  w.wall_model = g.chambers[e.chamber].model;
  const std::size_t rf = picard_number(cf.model.fan), rh = picard_number(ch.model.fan);
  auto fail = [&](const std::string& why) {
    return EngineError("classify_wall: " + why + " (chambers " + std::to_string(f) + ", " + std::to_string(h) + ")");
  };

  if (ch.dim == 1) {
    if (rf != rh + 1) throw fail("Picard numbers do not drop by one");
    w.from = cf.model;
    w.to = ch.model;
    w.tag = on_boundary ? WallCrossingKind::Tag::mori_fiber : WallCrossingKind::Tag::small_contraction;
    if (on_boundary && w.to.fan.rank >= z.rank) throw fail("boundary wall without a fibration");
    if (!on_boundary && (!w.to.birational() || is_simplicial(w.to.fan)))
      throw fail("interior 1-dimensional chamber with a Q-factorial model");
  } else if (ch.dim == 2) {
    if (on_boundary) throw fail("wall between 2-dimensional chambers on the boundary of E(B)");
    if (rf == rh) {
      w.tag = WallCrossingKind::Tag::flop;
      w.from = cf.model;
      w.to = ch.model;
    } else if (rf == rh + 1 || rh == rf + 1) {
      w.tag = WallCrossingKind::Tag::divisorial;
      w.from = rf > rh ? cf.model : ch.model;
      w.to = rf > rh ? ch.model : cf.model;
    } else {
      throw fail("Picard numbers differ by more than one");
    }
  } else {
    throw fail("neighbour is a point");
  }
  w.divisor_on_from = pushforward(z, w.from.fan, d_o);

  if (w.tag == WallCrossingKind::Tag::flop) {
    const ToricModel& wm = w.wall_model;
    if (!wm.birational() || is_simplicial(wm.fan)) throw fail("flopping contraction target is Q-factorial");
    const TorusDivisor wa = ample_model(z, d_o).ample;
    auto contracted = contracted_walls(w.from.fan, wm, wa);
    if (contracted.empty()) throw fail("flopping contraction contracts nothing");
    auto ws = walls(w.from.fan);
    auto cone = mori_cone(w.from.fan);
    auto ray = std::find_if(cone.rays.begin(), cone.rays.end(),
                            [&](const ExtremalRay& r) { return r.relation == ws[contracted.front()].relation; });
    if (ray == cone.rays.end()) throw fail("flopped curve is not extremal");
    auto step = contract(w.from.fan, *ray);
    if (step.kind != ContractionKind::flip || !step.flipped || !(step.flipped->fan == w.to.fan))
      throw fail("flop does not reach the neighbouring model");
    if (sgn(dot(w.divisor_on_from, step.relation)) != 0) throw fail("flop is not trivial on the wall divisor");
    w.flop = std::move(step);
  } else {
    w.map = make_morphism(w.from, w.to, w.to.lattice_map);
    if (!w.map) throw fail("no contraction between the models");
    const std::size_t to_chamber = rh > rf ? f : h;
    if (!trivial_on_contracted(w.from.fan, w.to, ample_on(g, g.chambers[to_chamber].sample), w.divisor_on_from))
      throw fail("contraction is not trivial on the wall divisor");
  }
  return w;
}

std::optional<std::size_t> edge_inside(const GeographySlice& g, std::size_t a, std::size_t b) {
  const auto& va = g.chambers[a].vertices;
  const auto& vb = g.chambers[b].vertices;
  for (std::size_t i = 0; i < g.strata.size(); ++i) {
    const auto& s = g.strata[i];
    if (s.dim != 1) continue;
    if (contains_vertex(va, s.vertices[0]) && contains_vertex(va, s.vertices[1]) && contains_vertex(vb, s.vertices[0]) &&
        contains_vertex(vb, s.vertices[1]))
      return i;
  }
  return std::nullopt;
}

}  // namespace

WallCrossingKind classify_wall(const GeographySlice& g, std::size_t f, std::size_t h) {
  if (f >= g.chambers.size() || h >= g.chambers.size()) throw InputError("classify_wall: no such chamber");
  if (g.intersection_dim(f, h) != 1) throw InputError("classify_wall: chambers do not meet along a 1-dimensional wall");
  auto e = edge_inside(g, f, h);
  if (!e) throw InputError("classify_wall: chambers do not meet along a 1-dimensional wall");
  return classify_across(g, f, h, *e);
}

}  // namespace toric

namespace toric {

namespace {

GenericityError vertex_error(const GeographySlice& g, std::size_t v, const std::string& why) {
  return GenericityError("link_at_vertex: " + why,
                         {"vertex " + std::to_string(v) + " at (" + to_string(g.points[v]) + "): " + why});
}

// Edge stratum at v separating the two chambers.
std::optional<std::size_t> edge_at(const GeographySlice& g, std::size_t v, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < g.strata.size(); ++i) {
    const auto& s = g.strata[i];
    if (s.dim != 1 || s.cells.size() != 2 || (s.vertices[0] != v && s.vertices[1] != v)) continue;
    std::size_t ca = g.strata[s.cells[0]].chamber, cb = g.strata[s.cells[1]].chamber;
    if ((ca == a && cb == b) || (ca == b && cb == a)) return i;
  }
  return std::nullopt;
}

std::size_t relative_picard(const ToricModel& x, const ToricModel& r) {
  std::size_t px = picard_number(x.fan), pr = picard_number(r.fan);
  if (px < pr) throw EngineError("relative Picard number is negative");
  return px - pr;
}

}  // namespace

SarkisovLink link_at_vertex(const GeographySlice& g, std::size_t v, std::size_t toward_s, std::size_t toward_t) {
  if (v >= g.points.size()) throw InputError("link_at_vertex: no such vertex");
  const RationalPoint& p = g.points[v];
  if (!g.in_region_interior(p)) throw vertex_error(g, v, "vertex lies on the boundary of B");
  for (auto e : {toward_s, toward_t}) {
    const auto& s = g.strata[e];
    if (s.dim != 1 || s.cells.size() != 1 || (s.vertices[0] != v && s.vertices[1] != v))
      throw InputError("link_at_vertex: edges are not boundary edges at the vertex");
  }

  // 2-dimensional cells around v, swept from the S side to the T side.
  auto away = [&](std::size_t e) {
    const auto& s = g.strata[e];
    return sub(g.points[s.vertices[0] == v ? s.vertices[1] : s.vertices[0]], p);
  };
  const RationalPoint d0 = away(toward_s);
  const int orient = sgn(cross(d0, sub(g.strata[g.strata[toward_s].cells.front()].sample, p)));
  if (orient == 0) throw vertex_error(g, v, "degenerate cell at the vertex");
  std::vector<std::size_t> cells;
  for (std::size_t i = 0; i < g.strata.size(); ++i)
    if (g.strata[i].dim == 2 && std::count(g.strata[i].vertices.begin(), g.strata[i].vertices.end(), v))
      cells.push_back(i);
  std::sort(cells.begin(), cells.end(), [&](std::size_t a, std::size_t b) {
    return orient * sgn(cross(sub(g.strata[a].sample, p), sub(g.strata[b].sample, p))) > 0;
  });
  std::vector<std::size_t> around;
  for (auto c : cells)
    if (around.empty() || around.back() != g.strata[c].chamber) around.push_back(g.strata[c].chamber);
  if (std::set<std::size_t>(around.begin(), around.end()).size() != around.size())
    throw vertex_error(g, v, "a chamber meets the vertex in two sectors");
  if (around.empty() || around.front() != chamber_of_cell_next_to(g, toward_s) ||
      around.back() != chamber_of_cell_next_to(g, toward_t))
    throw vertex_error(g, v, "chambers around the vertex do not match the boundary edges");

  SarkisovLink link;
  link.vertex = v;
  link.dagger = g.divisor_at(p);
  link.k = around.size();
  const std::size_t k = link.k;
  link.x = g.chambers[around.front()].model;
  link.y = g.chambers[around.back()].model;
  link.s = g.chambers[g.strata[toward_s].chamber].model;
  link.t = g.chambers[g.strata[toward_t].chamber].model;
  link.r = g.chambers[g.strata[v].chamber].model;
  link.rho_x_r = relative_picard(link.x, link.r);
  link.rho_y_r = relative_picard(link.y, link.r);

  // The two Mori fiber structures at O_0 and O_k.
  auto phi = classify_across(g, around.front(), g.strata[toward_s].chamber, toward_s);
  auto psi = classify_across(g, around.back(), g.strata[toward_t].chamber, toward_t);
  if (phi.tag != WallCrossingKind::Tag::mori_fiber || psi.tag != WallCrossingKind::Tag::mori_fiber)
    throw vertex_error(g, v, "boundary edges are not Mori fiber walls");

  std::vector<WallCrossingKind> inner;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    auto e = edge_at(g, v, around[i], around[i + 1]);
    if (!e || g.intersection_dim(around[i], around[i + 1]) != 1)
      throw vertex_error(g, v, "wall O_" + std::to_string(i + 1) + " is not 1-dimensional");
    inner.push_back(classify_across(g, around[i], around[i + 1], *e));
  }
  for (std::size_t i = 1; i + 1 < k; ++i)
    if (relative_picard(g.chambers[around[i]].model, link.r) != 2)
      throw vertex_error(g, v, "intermediate model with relative Picard number other than 2");

  using Tag = WallCrossingKind::Tag;
  auto is_div = [](const WallCrossingKind& w) { return w.tag == Tag::divisorial; };
  auto is_flop = [](const WallCrossingKind& w) { return w.tag == Tag::flop; };
  const bool s_id = link.s == link.r, t_id = link.t == link.r;
  bool fourth = false;
  if (k == 1) {
    if (link.rho_x_r != 2) throw vertex_error(g, v, "single chamber with relative Picard number other than 2");
    link.case_tag = 1;
    fourth = true;
    link.note = "vertex meets a single 2-dimensional chamber";
  } else if (k == 2) {
    const auto& w = inner.front();
    link.note = "vertex meets exactly two 2-dimensional chambers";
    if (link.rho_x_r == 1 && link.rho_y_r == 2 && is_div(w) && w.from == link.y && s_id) {
      link.case_tag = 2;
      link.type = LinkType::I;
      link.x_prime = link.y;
      link.p = w.map;
    } else if (link.rho_x_r == 2 && link.rho_y_r == 1 && is_div(w) && w.from == link.x && t_id) {
      link.case_tag = 3;
      link.type = LinkType::III;
      link.y_prime = link.x;
      link.q = w.map;
    } else if (link.rho_x_r == 2 && link.rho_y_r == 2 && is_flop(w) && !s_id && !t_id) {
      link.case_tag = 7;
      fourth = true;
      link.flops.push_back(*w.flop);
      link.note += "; both sides have relative Picard number 2 and are joined by one flop";
    } else {
      throw vertex_error(g, v, "two chambers with an impossible Picard pattern");
    }
  } else {
    const auto& first = inner.front();
    const auto& last = inner.back();
    for (std::size_t i = 1; i + 1 < inner.size(); ++i)
      if (!is_flop(inner[i])) throw vertex_error(g, v, "interior wall is not a flop");
    link.x_prime = g.chambers[around[1]].model;
    link.y_prime = g.chambers[around[k - 2]].model;
    const bool p_div = is_div(first) && first.from == *link.x_prime && first.to == link.x;
    const bool q_div = is_div(last) && last.from == *link.y_prime && last.to == link.y;
    if (!p_div && !is_flop(first)) throw vertex_error(g, v, "first wall is neither divisorial nor a flop");
    if (!q_div && !is_flop(last)) throw vertex_error(g, v, "last wall is neither divisorial nor a flop");
    if (p_div != s_id || q_div != t_id) throw vertex_error(g, v, "divisorial walls do not match identical bases");
    if (p_div) link.p = first.map;
    if (q_div) link.q = last.map;
    for (const auto& w : inner)
      if (is_flop(w)) link.flops.push_back(*w.flop);
    link.case_tag = p_div ? (q_div ? 4 : 5) : (q_div ? 6 : 7);
    link.type = p_div ? (q_div ? LinkType::II : LinkType::I) : (q_div ? LinkType::III : LinkType::IVm);
    fourth = link.case_tag == 7;
  }

  if (fourth) {
    const bool r_simplicial = is_simplicial(link.r.fan);
    const bool s_fiber = link.s.fan.rank > link.r.fan.rank, t_fiber = link.t.fan.rank > link.r.fan.rank;
    const bool s_small = !s_id && link.s.fan.rank == link.r.fan.rank && !r_simplicial;
    const bool t_small = !t_id && link.t.fan.rank == link.r.fan.rank && !r_simplicial;
    if (s_fiber && t_fiber && r_simplicial)
      link.type = LinkType::IVm;
    else if (s_small && t_small)
      link.type = LinkType::IVs;
    else
      throw vertex_error(g, v, "maps to R are neither both fibrations nor both small");
  }
  for (const auto& step : link.flops)
    if (sgn(dot(pushforward(g.base, step.source.fan, link.dagger), step.relation)) != 0)
      throw vertex_error(g, v, "flop is not trivial on D-dagger");
  if (link.r.fan.rank > 0) {
    if (!induced_morphism(link.s, link.r)) throw vertex_error(g, v, "no morphism S -> R");
    if (!induced_morphism(link.t, link.r)) throw vertex_error(g, v, "no morphism T -> R");
  }
  return link;
}

}  // namespace toric

namespace toric {

SarkisovChain factorize(const Fan& z, const TorusDivisor& d, const MMPTrace& trace_f, const MMPTrace& trace_g,
                        const SliceOptions& options) {
  for (const auto* t : {&trace_f, &trace_g})
    if (t->outcome != MMPOutcome::mori_fiber_space || !t->base)
      throw InputError("factorize: both traces must end in Mori fiber spaces");
  SarkisovChain chain;
  chain.start_x = birational_model(trace_f.result.fan);
  chain.start_s = *trace_f.base;
  chain.end_y = birational_model(trace_g.result.fan);
  chain.end_t = *trace_g.base;
  if (chain.start_x == chain.end_y && chain.start_s == chain.end_t) return chain;

  const ToricModel zm = birational_model(z);
  const TorusDivisor dz = pushforward(z, zm.fan, d);  // in zm's ray order
  std::vector<std::string> certificates;
  std::shared_ptr<const GeographySlice> last;
  constexpr std::size_t kSlices = 4;
  for (std::size_t round = 0; round < kSlices; ++round) {
    SliceOptions o = options;
    o.seed = options.seed + round * 0x9e3779b9ULL;
    try {
      SarkisovSlice ss = build_slice(z, d, trace_f, trace_g, o);
      last = std::make_shared<GeographySlice>(ss.slice);
      const auto& g = ss.slice;
      auto arc = nonbig_boundary_arc(g, *g.find_chamber(ss.s), *g.find_chamber(ss.t), g.find_chamber(ss.x),
                                     g.find_chamber(ss.y));
      std::vector<SarkisovLink> links;
      for (std::size_t i = 0; i < arc.vertices.size(); ++i) {
        if (!std::count(arc.link_vertices.begin(), arc.link_vertices.end(), arc.vertices[i])) continue;
        links.push_back(link_at_vertex(g, arc.vertices[i], arc.edges[i], arc.edges[i + 1]));
      }
      // Every model met along the walk is a D-MMP result of Z.
      for (const auto& l : links) {
        std::vector<const ToricModel*> models{&l.x, &l.y};
        if (l.x_prime) models.push_back(&*l.x_prime);
        if (l.y_prime) models.push_back(&*l.y_prime);
        for (const auto& f : l.flops) models.push_back(&f.source);
        for (const auto* m : models)
          if (!pullback_compare(zm, *m, dz).non_positive)
            throw EngineError("factorize: model on the walk is not D-non-positive: " + describe(m->fan));
      }
      chain.links = std::move(links);
      chain.slice = std::move(ss);
      auto report = verify_chain(chain);
      if (!report.ok()) {
        chain.links.clear();
        chain.slice.reset();
        for (const auto& f : report.failures) certificates.push_back("slice " + std::to_string(round) + ": " + f);
        continue;
      }
      return chain;
    } catch (const GenericityError& e) {
      certificates.push_back("slice " + std::to_string(round) + ": " + e.what());
      for (const auto& c : e.certificates) certificates.push_back("slice " + std::to_string(round) + ": " + c);
      if (e.slice) last = e.slice;
    }
  }
  throw GenericityError("factorize: no slice produced a verified chain", std::move(certificates), last);
}

VerificationReport verify_chain(const SarkisovChain& chain) {
  VerificationReport rep;
  auto fail = [&](std::string m) { rep.failures.push_back(std::move(m)); };
  if (chain.links.empty()) {
    if (!(chain.start_x == chain.end_y && chain.start_s == chain.end_t)) fail("empty chain between distinct endpoints");
    return rep;
  }
  if (!chain.slice) {
    fail("chain has links but no slice");
    return rep;
  }
  const Fan& z = chain.slice->slice.base;
  const auto& first = chain.links.front();
  const auto& last = chain.links.back();
  if (!(first.x == chain.start_x) || !(first.s == chain.start_s)) fail("chain does not start at the first MFS");
  if (!(last.y == chain.end_y) || !(last.t == chain.end_t)) fail("chain does not end at the second MFS");
  for (std::size_t i = 0; i + 1 < chain.links.size(); ++i)
    if (!(chain.links[i].y == chain.links[i + 1].x) || !(chain.links[i].t == chain.links[i + 1].s))
      fail("links " + std::to_string(i) + " and " + std::to_string(i + 1) + " do not share their MFS");

  for (std::size_t i = 0; i < chain.links.size(); ++i) {
    const auto& l = chain.links[i];
    const std::string tag = "link " + std::to_string(i) + ": ";
    const bool s_id = l.s == l.r, t_id = l.t == l.r;
    const bool fourth = l.type == LinkType::IVm || l.type == LinkType::IVs;
    switch (l.case_tag) {
      case 1:
        if (l.k != 1 || !fourth || !(l.x == l.y)) fail(tag + "case 1 needs one chamber and type IV");
        break;
      case 2:
        if (l.type != LinkType::I || l.rho_x_r != 1 || l.rho_y_r != 2 || !s_id) fail(tag + "case 2 mismatch");
        break;
      case 3:
        if (l.type != LinkType::III || l.rho_x_r != 2 || l.rho_y_r != 1 || !t_id) fail(tag + "case 3 mismatch");
        break;
      case 4:
        if (l.type != LinkType::II || !s_id || !t_id) fail(tag + "case 4 mismatch");
        break;
      case 5:
        if (l.type != LinkType::I || !s_id || t_id) fail(tag + "case 5 mismatch");
        break;
      case 6:
        if (l.type != LinkType::III || s_id || !t_id) fail(tag + "case 6 mismatch");
        break;
      case 7:
        if (!fourth || s_id || t_id || l.rho_x_r != 2 || l.rho_y_r != 2) fail(tag + "case 7 mismatch");
        break;
      default:
        fail(tag + "unknown case");
    }
    const bool want_p = l.type == LinkType::I || l.type == LinkType::II;
    const bool want_q = l.type == LinkType::II || l.type == LinkType::III;
    if (l.p.has_value() != want_p || l.q.has_value() != want_q) fail(tag + "vertical maps do not match the type");
    if (l.p && (!(l.p->target == l.x) || picard_number(l.p->source.fan) != picard_number(l.x.fan) + 1))
      fail(tag + "p is not a divisorial contraction onto X");
    if (l.q && (!(l.q->target == l.y) || picard_number(l.q->source.fan) != picard_number(l.y.fan) + 1))
      fail(tag + "q is not a divisorial contraction onto Y");
    if (l.type == LinkType::IVs && is_simplicial(l.r.fan)) fail(tag + "IVs with a Q-factorial R");
    if (l.type == LinkType::IVm && !is_simplicial(l.r.fan)) fail(tag + "IVm with a non-Q-factorial R");
    if (l.type == LinkType::IVs && z.rank <= 3) fail(tag + "IVs in dimension at most 3");
    for (std::size_t j = 0; j < l.flops.size(); ++j) {
      const auto& f = l.flops[j];
      if (f.kind != ContractionKind::flip || !f.flipped) {
        fail(tag + "horizontal step is not small");
        continue;
      }
      if (sgn(dot(pushforward(z, f.source.fan, l.dagger), f.relation)) != 0)
        fail(tag + "flop " + std::to_string(j) + " is not trivial on D-dagger");
      if (j + 1 < l.flops.size() && !(f.flipped->fan == l.flops[j + 1].source.fan))
        fail(tag + "flops do not compose");
    }
  }
  return rep;
}

}  // namespace toric
