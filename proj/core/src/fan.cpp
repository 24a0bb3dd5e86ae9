#include "toric/fan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "toric/polyhedron.hpp"

namespace toric {

namespace {

bool lattice_less(const LatticeVector& a, const LatticeVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Pointedness: no nonzero nonnegative combination of the generators vanishes.
bool strongly_convex(const std::vector<RationalPoint>& gens, std::size_t dim) {
  if (gens.empty()) return true;
  RatMatrix a(dim + 1, RationalPoint(gens.size(), Rational(0)));
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) a[i][j] = gens[j][i];
    a[dim][j] = 1;
  }
  RationalPoint b(dim + 1, Rational(0));
  b[dim] = 1;
  return !nonnegative_solution(a, b, gens.size()).has_value();
}

// Codimension-one faces of a full-dimensional cone, as sorted global indices.
std::vector<Cone> facets_of(const Fan& f, const Cone& c) {
  std::vector<Cone> out;
  if (c.size() == f.rank && rank(f.cone_generators(c), f.rank) == f.rank) {
    for (std::size_t skip = 0; skip < c.size(); ++skip) {
      Cone face;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (i != skip) face.push_back(c[i]);
      out.push_back(std::move(face));
    }
    return out;
  }
  for (const auto& local : cone_facets(f.cone_generators(c), f.rank)) {
    Cone face;
    for (auto i : local) face.push_back(c[i]);
    std::sort(face.begin(), face.end());
    out.push_back(std::move(face));
  }
  return out;
}

std::vector<std::vector<std::size_t>> pulling_triangulation(const std::vector<std::size_t>& gens,
                                                            const std::vector<RationalPoint>& rays,
                                                            std::size_t dim) {
  std::vector<RationalPoint> vecs;
  for (auto g : gens) vecs.push_back(rays[g]);
  if (rank(vecs, dim) == gens.size()) return {gens};
  const std::size_t apex = *std::min_element(gens.begin(), gens.end());
  std::vector<std::vector<std::size_t>> out;
  for (const auto& local : cone_facets(vecs, dim)) {
    std::vector<std::size_t> facet;
    for (auto i : local) facet.push_back(gens[i]);
    if (std::find(facet.begin(), facet.end(), apex) != facet.end()) continue;
    for (auto simplex : pulling_triangulation(facet, rays, dim)) {
      simplex.push_back(apex);
      std::sort(simplex.begin(), simplex.end());
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

}  // namespace

std::vector<RationalPoint> Fan::cone_generators(const Cone& c) const {
  std::vector<RationalPoint> out;
  out.reserve(c.size());
  for (auto i : c) out.push_back(to_rational(rays[i]));
  return out;
}

std::size_t Fan::ray_index(const LatticeVector& v) const {
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (rays[i] == v) return i;
  return rays.size();
}

bool Fan::operator==(const Fan& other) const {
  Fan a = canonical(*this), b = canonical(other);
  return a.rank == b.rank && a.rays == b.rays && a.max_cones == b.max_cones;
}

Fan canonical(const Fan& f) {
  std::vector<bool> used(f.rays.size(), false);
  for (const auto& c : f.max_cones)
    for (auto i : c) used[i] = true;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < f.rays.size(); ++i)
    if (used[i]) order.push_back(i);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return lattice_less(f.rays[x], f.rays[y]); });
  std::vector<std::size_t> remap(f.rays.size(), 0);
  Fan out;
  out.rank = f.rank;
  for (std::size_t k = 0; k < order.size(); ++k) {
    remap[order[k]] = k;
    out.rays.push_back(f.rays[order[k]]);
  }
  for (const auto& c : f.max_cones) {
    Cone nc;
    for (auto i : c) nc.push_back(remap[i]);
    std::sort(nc.begin(), nc.end());
    out.max_cones.push_back(std::move(nc));
  }
  std::sort(out.max_cones.begin(), out.max_cones.end());
  out.max_cones.erase(std::unique(out.max_cones.begin(), out.max_cones.end()), out.max_cones.end());
  return out;
}

std::string describe(const Fan& f) {
  std::ostringstream os;
  os << "rank " << f.rank << " rays";
  for (const auto& r : f.rays) os << ' ' << to_string(r);
  os << " cones";
  for (const auto& c : f.max_cones) {
    os << " {";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << '}';
  }
  return os.str();
}

FanDiagnostics validate_fan(const Fan& f) {
  FanDiagnostics d;
  auto fail = [&](std::string msg) {
    d.valid = false;
    d.message = std::move(msg);
    return d;
  };
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    const auto& r = f.rays[i];
    if (r.size() != f.rank) return fail("ray " + std::to_string(i) + " has wrong length");
    if (is_zero(r)) return fail("ray " + std::to_string(i) + " is zero");
    if (gcd_of(r) != 1) return fail("ray " + std::to_string(i) + " is not primitive");
    for (std::size_t j = 0; j < i; ++j)
      if (f.rays[j] == r) return fail("rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  if (f.max_cones.empty()) return fail("fan has no cones");
  std::vector<bool> used(f.rays.size(), false);
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    const auto& cone = f.max_cones[c];
    std::set<std::size_t> uniq(cone.begin(), cone.end());
    if (uniq.size() != cone.size()) return fail("cone " + std::to_string(c) + " repeats a ray");
    for (auto i : cone) {
      if (i >= f.rays.size()) return fail("cone " + std::to_string(c) + " references a missing ray");
      used[i] = true;
    }
    if (cone.empty() && f.max_cones.size() > 1) return fail("the zero cone is not maximal");
    auto gens = f.cone_generators(cone);
    if (!strongly_convex(gens, f.rank)) return fail("cone " + std::to_string(c) + " is not strongly convex");
    if (extreme_generators(gens, f.rank).size() != gens.size())
      return fail("cone " + std::to_string(c) + " lists a generator that is not an extreme ray");
  }
  for (std::size_t i = 0; i < f.rays.size(); ++i)
    if (!used[i]) return fail("ray " + std::to_string(i) + " lies in no cone");

  for (std::size_t a = 0; a < f.max_cones.size(); ++a) {
    for (std::size_t b = a + 1; b < f.max_cones.size(); ++b) {
      const auto& ca = f.max_cones[a];
      const auto& cb = f.max_cones[b];
      std::set<std::size_t> sa(ca.begin(), ca.end()), sb(cb.begin(), cb.end());
      Polyhedron sep;
      sep.dim = f.rank;
      for (auto i : ca) {
        RationalPoint v = to_rational(f.rays[i]);
        if (sb.count(i)) {
          sep.inequalities.push_back({v, 0});
          sep.inequalities.push_back({scale(v, Rational(-1)), 0});
        } else {
          sep.inequalities.push_back({v, 1});
        }
      }
      for (auto i : cb) {
        if (sa.count(i)) continue;
        sep.inequalities.push_back({scale(to_rational(f.rays[i]), Rational(-1)), 1});
      }
      if (!lp_feasible(sep).feasible()) {
        d.violating_pair = std::make_pair(a, b);
        return fail("cones " + std::to_string(a) + " and " + std::to_string(b) +
                    " do not meet in a common face");
      }
      if (std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()) ||
          std::includes(sa.begin(), sa.end(), sb.begin(), sb.end())) {
        d.violating_pair = std::make_pair(a, b);
        return fail("cone " + std::to_string(a) + " and cone " + std::to_string(b) + " are nested");
      }
    }
  }
  return d;
}

bool is_complete(const Fan& f) {
  if (f.rank == 0) return !f.max_cones.empty();
  std::map<Cone, int> count;
  for (const auto& c : f.max_cones) {
    if (rank(f.cone_generators(c), f.rank) != f.rank) return false;
    for (auto& face : facets_of(f, c)) ++count[face];
  }
  return std::all_of(count.begin(), count.end(), [](const auto& kv) { return kv.second == 2; });
}

bool is_simplicial(const Fan& f) {
  return std::all_of(f.max_cones.begin(), f.max_cones.end(), [&](const Cone& c) {
    return c.size() == f.rank && rank(f.cone_generators(c), f.rank) == f.rank;
  });
}

std::vector<Wall> walls(const Fan& f) {
  if (!is_simplicial(f)) throw InputError("walls: fan is not simplicial");
  std::map<Cone, std::vector<std::size_t>> owners;
  for (std::size_t c = 0; c < f.max_cones.size(); ++c)
    for (auto& face : facets_of(f, f.max_cones[c])) owners[face].push_back(c);
  std::vector<Wall> out;
  for (const auto& [face, cones] : owners) {
    if (cones.size() != 2) throw InputError("walls: fan is not complete");
    Wall w;
    w.face = face;
    w.cone_a = cones[0];
    w.cone_b = cones[1];
    auto extra = [&](std::size_t c) {
      for (auto i : f.max_cones[c])
        if (!std::binary_search(face.begin(), face.end(), i)) return i;
      throw EngineError("walls: wall is not a facet");
    };
    w.ray_a = extra(w.cone_a);
    w.ray_b = extra(w.cone_b);
    std::vector<std::size_t> support = face;
    support.push_back(w.ray_a);
    support.push_back(w.ray_b);
    // columns are the rays of the two cones
    RatMatrix m(f.rank, RationalPoint(support.size()));
    for (std::size_t j = 0; j < support.size(); ++j)
      for (std::size_t i = 0; i < f.rank; ++i) m[i][j] = f.rays[support[j]][i];
    auto ker = kernel(m, support.size());
    if (ker.size() != 1) throw EngineError("walls: relation space is not one-dimensional");
    LatticeVector local = integral_direction(ker[0]);
    if (sgn(local[support.size() - 2]) < 0)
      for (auto& x : local) x = -x;
    if (sgn(local[support.size() - 2]) <= 0 || sgn(local[support.size() - 1]) <= 0)
      throw EngineError("walls: wall relation has non-positive outer coefficients");
    w.relation.assign(f.rays.size(), Integer(0));
    for (std::size_t j = 0; j < support.size(); ++j) w.relation[support[j]] = local[j];
    out.push_back(std::move(w));
  }
  return out;
}

ProjectivityCertificate is_projective(const Fan& f) {
  if (!is_complete(f)) throw InputError("is_projective: fan is not complete");
  auto ws = walls(f);
  Polyhedron p;
  p.dim = f.rays.size();
  for (const auto& w : ws) p.inequalities.push_back({to_rational(w.relation), 1});
  ProjectivityCertificate cert;
  auto lp = lp_feasible(p);
  if (lp.feasible())
    cert.ample_divisor = lp.point;
  else
    cert.farkas = lp.farkas;
  return cert;
}

std::size_t picard_number(const Fan& f) {
  if (f.rank == 0) return 0;
  if (is_simplicial(f) && is_complete(f)) return f.rays.size() - f.rank;
  const std::size_t n = f.rank, k = f.max_cones.size();
  RatMatrix eqs;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      std::vector<std::size_t> common;
      std::set_intersection(f.max_cones[a].begin(), f.max_cones[a].end(), f.max_cones[b].begin(),
                            f.max_cones[b].end(), std::back_inserter(common));
      for (auto r : common) {
        RationalPoint row(n * k, Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
          row[a * n + i] = f.rays[r][i];
          row[b * n + i] = -f.rays[r][i];
        }
        eqs.push_back(std::move(row));
      }
    }
  std::size_t dim = n * k - rank(eqs, n * k);
  return dim - n;
}

// ---------------------------------------------------------------------------

std::size_t ToricModel::base_rank() const {
  return lattice_map.empty() ? 0 : lattice_map[0].size();
}

bool ToricModel::birational() const {
  return lattice_map.size() == fan.rank && lattice_map == identity_matrix(fan.rank);
}

bool ToricModel::operator==(const ToricModel& other) const {
  return lattice_map == other.lattice_map && fan == other.fan;
}

ToricModel make_model(const Fan& f, IntMatrix lattice_map) {
  return ToricModel{canonical(f), std::move(lattice_map)};
}

ToricModel birational_model(const Fan& f) { return make_model(f, identity_matrix(f.rank)); }

std::string model_key(const ToricModel& m) {
  Fan f = canonical(m.fan);
  std::ostringstream os;
  os << "L";
  for (const auto& row : m.lattice_map) os << to_string(row);
  os << "|R";
  for (const auto& r : f.rays) os << to_string(r);
  os << "|C";
  for (const auto& c : f.max_cones) {
    os << '[';
    for (auto i : c) os << i << ',';
    os << ']';
  }
  return os.str();
}

std::optional<std::size_t> locate(const Fan& f, const RationalPoint& x) {
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    const auto& cone = f.max_cones[c];
    auto gens = f.cone_generators(cone);
    if (cone.size() == f.rank) {
      auto lambda = solve_square(transpose(gens, f.rank), x);
      if (lambda) {
        if (std::all_of(lambda->begin(), lambda->end(), [](const Rational& q) { return sgn(q) >= 0; }))
          return c;
        continue;
      }
    }
    if (cone_contains(gens, x)) return c;
  }
  return std::nullopt;
}

std::optional<FanMorphism> make_morphism(const ToricModel& source, const ToricModel& target,
                                         const IntMatrix& lattice_map) {
  const Fan& sf = source.fan;
  const Fan& tf = target.fan;
  std::vector<std::vector<RationalPoint>> target_ineqs;
  for (const auto& c : tf.max_cones) target_ineqs.push_back(cone_inequalities(tf.cone_generators(c), tf.rank));
  for (const auto& c : sf.max_cones) {
    std::vector<RationalPoint> images;
    for (auto i : c) images.push_back(to_rational(mat_vec(lattice_map, sf.rays[i])));
    bool found = false;
    for (const auto& ineqs : target_ineqs) {
      bool inside = std::all_of(images.begin(), images.end(), [&](const RationalPoint& y) {
        return std::all_of(ineqs.begin(), ineqs.end(), [&](const RationalPoint& h) { return sgn(dot(h, y)) >= 0; });
      });
      if (inside) {
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  FanMorphism m;
  m.source = source;
  m.target = target;
  m.lattice_map = lattice_map;
  if (sf.rank == tf.rank && lattice_map == identity_matrix(sf.rank))
    m.kind = FanMorphism::Kind::refinement;
  else if (rank(lattice_map, sf.rank) == tf.rank && tf.rank < sf.rank)
    m.kind = FanMorphism::Kind::projection;
  else
    m.kind = FanMorphism::Kind::mixed;
  return m;
}

Refinement common_refinement(const Fan& a, const Fan& b) {
  if (a.rank != b.rank) throw InputError("common_refinement: lattice ranks differ");
  const std::size_t n = a.rank;
  std::vector<std::vector<LatticeVector>> cells;
  for (const auto& ca : a.max_cones) {
    auto ia = cone_inequalities(a.cone_generators(ca), n);
    for (const auto& cb : b.max_cones) {
      auto ineqs = ia;
      auto ib = cone_inequalities(b.cone_generators(cb), n);
      ineqs.insert(ineqs.end(), ib.begin(), ib.end());
      auto gens = cone_generators(ineqs, n);
      if (rank(gens.rays, n) != n) continue;
      std::vector<LatticeVector> rays;
      for (const auto& r : gens.rays) rays.push_back(integral_direction(r));
      cells.push_back(std::move(rays));
    }
  }
  std::set<LatticeVector, decltype(&lattice_less)> table(&lattice_less);
  for (const auto& c : cells) table.insert(c.begin(), c.end());
  Fan w;
  w.rank = n;
  w.rays.assign(table.begin(), table.end());
  std::vector<RationalPoint> qrays;
  for (const auto& r : w.rays) qrays.push_back(to_rational(r));
  for (const auto& c : cells) {
    std::vector<std::size_t> gens;
    for (const auto& r : c) gens.push_back(w.ray_index(r));
    std::sort(gens.begin(), gens.end());
    for (auto& simplex : pulling_triangulation(gens, qrays, n)) w.max_cones.push_back(simplex);
  }
  w = canonical(w);
  ToricModel wm = birational_model(w);
  auto to_a = make_morphism(wm, birational_model(a), identity_matrix(n));
  auto to_b = make_morphism(wm, birational_model(b), identity_matrix(n));
  if (!to_a || !to_b) throw EngineError("common_refinement: result does not refine its inputs");
  return Refinement{w, *to_a, *to_b};
}

Fan star_subdivision(const Fan& f, const LatticeVector& v) {
  if (v.size() != f.rank) throw InputError("star_subdivision: vector has wrong length");
  if (gcd_of(v) != 1) throw InputError("star_subdivision: vector is not primitive");
  if (f.ray_index(v) != f.rays.size()) return f;
  RationalPoint qv = to_rational(v);
  Fan out;
  out.rank = f.rank;
  out.rays = f.rays;
  out.rays.push_back(v);
  const std::size_t vi = out.rays.size() - 1;
  bool inside = false;
  for (const auto& c : f.max_cones) {
    auto gens = f.cone_generators(c);
    if (!cone_contains(gens, qv)) {
      out.max_cones.push_back(c);
      continue;
    }
    inside = true;
    auto ineqs = cone_generators(gens, f.rank);  // dual rays give facet normals
    for (const auto& y : ineqs.rays) {
      if (sgn(dot(y, qv)) == 0) continue;  // v lies on this facet
      Cone nc;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (sgn(dot(y, gens[i])) == 0) nc.push_back(c[i]);
      nc.push_back(vi);
      std::sort(nc.begin(), nc.end());
      out.max_cones.push_back(std::move(nc));
    }
  }
  if (!inside) throw InputError("star_subdivision: vector lies outside the support");
  return canonical(out);
}

Fan product(const Fan& a, const Fan& b) {
  Fan out;
  out.rank = a.rank + b.rank;
  for (const auto& r : a.rays) {
    LatticeVector v = r;
    v.resize(out.rank, Integer(0));
    out.rays.push_back(std::move(v));
  }
  for (const auto& r : b.rays) {
    LatticeVector v(a.rank, Integer(0));
    v.insert(v.end(), r.begin(), r.end());
    out.rays.push_back(std::move(v));
  }
  for (const auto& ca : a.max_cones)
    for (const auto& cb : b.max_cones) {
      Cone c = ca;
      for (auto i : cb) c.push_back(i + a.rays.size());
      out.max_cones.push_back(std::move(c));
    }
  return canonical(out);
}

}  // namespace toric
