#include "toric/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toric {

namespace {

bool lex_less(const RationalPoint& a, const RationalPoint& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct LexLess {
  bool operator()(const RationalPoint& a, const RationalPoint& b) const { return lex_less(a, b); }
};

RationalPoint integral(const RationalPoint& v) { return to_rational(integral_direction(v)); }

Rational cross(const RationalPoint& o, const RationalPoint& a, const RationalPoint& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace

int VRepresentation::dimension(std::size_t ambient) const {
  if (vertices.empty()) return -1;
  RatMatrix dirs;
  for (std::size_t i = 1; i < vertices.size(); ++i) dirs.push_back(sub(vertices[i], vertices[0]));
  for (const auto& r : rays) dirs.push_back(r);
  for (const auto& l : lines) dirs.push_back(l);
  return static_cast<int>(rank(dirs, ambient));
}

bool Polyhedron::contains(const RationalPoint& x) const {
  return std::all_of(inequalities.begin(), inequalities.end(),
                     [&](const Inequality& h) { return dot(h.normal, x) >= h.offset; });
}

bool Polyhedron::strictly_contains(const RationalPoint& x) const {
  return std::all_of(inequalities.begin(), inequalities.end(),
                     [&](const Inequality& h) { return dot(h.normal, x) > h.offset; });
}

Polyhedron Polyhedron::with_vrep() const {
  Polyhedron p = *this;
  if (!p.vrep) p.vrep = vertex_enumeration(p);
  return p;
}

// ---------------------------------------------------------------------------
// Phase-one simplex.

std::optional<RationalPoint> nonnegative_solution(const RatMatrix& a, const RationalPoint& b,
                                                  std::size_t cols) {
  const std::size_t m = a.size();
  if (m == 0) return RationalPoint(cols, Rational(0));
  const std::size_t width = cols + m + 1;  // originals, artificials, rhs
  RatMatrix t(m, RationalPoint(width, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = sgn(b[i]) < 0;
    for (std::size_t j = 0; j < cols; ++j) t[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
    t[i][cols + i] = 1;
    t[i][width - 1] = flip ? Rational(-b[i]) : b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = cols + i;
  auto cost = [&](std::size_t j) { return j >= cols ? 1 : 0; };

  while (true) {
    // Bland: smallest entering index with negative reduced cost.
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      Rational r = cost(j);
      for (std::size_t i = 0; i < m; ++i)
        if (cost(basis[i]) != 0 && sgn(t[i][j]) != 0) r -= t[i][j];
      if (sgn(r) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      Rational ratio = t[i][width - 1] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen for phase one
    Rational inv = 1 / t[leave][enter];
    for (auto& x : t[leave]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t k = 0; k < width; ++k)
        if (sgn(t[leave][k]) != 0) t[i][k] -= f * t[leave][k];
    }
    basis[leave] = enter;
  }
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= cols && sgn(t[i][width - 1]) != 0) return std::nullopt;
  RationalPoint y(cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < cols) y[basis[i]] = t[i][width - 1];
  return y;
}

LpResult lp_feasible(const Polyhedron& p) {
  const std::size_t d = p.dim;
  const std::size_t m = p.inequalities.size();
  LpResult res;
  if (m == 0) {
    res.point = RationalPoint(d, Rational(0));
    return res;
  }
  // [A, -A, -I] (x+, x-, s) = b
  RatMatrix a(m, RationalPoint(2 * d + m, Rational(0)));
  RationalPoint b(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      a[i][j] = p.inequalities[i].normal[j];
      a[i][d + j] = -p.inequalities[i].normal[j];
    }
    a[i][2 * d + i] = -1;
    b[i] = p.inequalities[i].offset;
  }
  if (auto z = nonnegative_solution(a, b, 2 * d + m)) {
    RationalPoint x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = (*z)[j] - (*z)[d + j];
    res.point = std::move(x);
    return res;
  }
  // Farkas: y >= 0, A^T y = 0, b^T y = 1.
  RatMatrix f(d + 1, RationalPoint(m, Rational(0)));
  RationalPoint rhs(d + 1, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) f[j][i] = p.inequalities[i].normal[j];
    f[d][i] = p.inequalities[i].offset;
  }
  rhs[d] = 1;
  auto y = nonnegative_solution(f, rhs, m);
  if (!y) throw EngineError("lp_feasible: neither a point nor a Farkas certificate found");
  res.farkas = std::move(*y);
  return res;
}

// ---------------------------------------------------------------------------
// Double description.

ConeGenerators cone_generators(const std::vector<RationalPoint>& normals, std::size_t dim) {
  ConeGenerators cone;
  for (std::size_t i = 0; i < dim; ++i) {
    RationalPoint e(dim, Rational(0));
    e[i] = 1;
    cone.lines.push_back(std::move(e));
  }
  std::vector<std::size_t> processed;
  for (std::size_t hi = 0; hi < normals.size(); ++hi) {
    const RationalPoint& h = normals[hi];
    std::size_t pivot = cone.lines.size();
    for (std::size_t i = 0; i < cone.lines.size(); ++i)
      if (sgn(dot(h, cone.lines[i])) != 0) {
        pivot = i;
        break;
      }
    if (pivot != cone.lines.size()) {
      RationalPoint l = cone.lines[pivot];
      Rational hl = dot(h, l);
      if (sgn(hl) < 0) {
        l = scale(l, Rational(-1));
        hl = -hl;
      }
      std::vector<RationalPoint> lines;
      for (std::size_t i = 0; i < cone.lines.size(); ++i) {
        if (i == pivot) continue;
        RationalPoint v = axpy(cone.lines[i], -dot(h, cone.lines[i]) / hl, l);
        lines.push_back(integral(v));
      }
      std::vector<RationalPoint> rays;
      for (const auto& r : cone.rays) rays.push_back(integral(axpy(r, -dot(h, r) / hl, l)));
      rays.push_back(integral(l));
      cone.lines = std::move(lines);
      cone.rays = std::move(rays);
      processed.push_back(hi);
      continue;
    }
    std::vector<Rational> val(cone.rays.size());
    for (std::size_t i = 0; i < cone.rays.size(); ++i) val[i] = dot(h, cone.rays[i]);
    // zero sets over previously processed inequalities
    std::vector<std::vector<bool>> zero(cone.rays.size(), std::vector<bool>(processed.size()));
    for (std::size_t i = 0; i < cone.rays.size(); ++i)
      for (std::size_t k = 0; k < processed.size(); ++k)
        zero[i][k] = sgn(dot(normals[processed[k]], cone.rays[i])) == 0;
    std::vector<RationalPoint> next;
    for (std::size_t i = 0; i < cone.rays.size(); ++i)
      if (sgn(val[i]) >= 0) next.push_back(cone.rays[i]);
    for (std::size_t p = 0; p < cone.rays.size(); ++p) {
      if (sgn(val[p]) <= 0) continue;
      for (std::size_t q = 0; q < cone.rays.size(); ++q) {
        if (sgn(val[q]) >= 0) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < cone.rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          bool covers = true;
          for (std::size_t k = 0; k < processed.size(); ++k)
            if (zero[p][k] && zero[q][k] && !zero[r][k]) {
              covers = false;
              break;
            }
          if (covers) adjacent = false;
        }
        if (!adjacent) continue;
        RationalPoint v = sub(scale(cone.rays[q], val[p]), scale(cone.rays[p], val[q]));
        next.push_back(integral(v));
      }
    }
    cone.rays = std::move(next);
    processed.push_back(hi);
  }
  return cone;
}

VRepresentation vertex_enumeration(const Polyhedron& p) {
  const std::size_t d = p.dim;
  std::vector<RationalPoint> normals;
  RationalPoint t_nonneg(d + 1, Rational(0));
  t_nonneg[d] = 1;
  normals.push_back(t_nonneg);
  for (const auto& h : p.inequalities) {
    RationalPoint n = h.normal;
    n.push_back(-h.offset);
    normals.push_back(std::move(n));
  }
  std::sort(normals.begin(), normals.end(), lex_less);
  auto cone = cone_generators(normals, d + 1);

  VRepresentation out;
  for (const auto& r : cone.rays) {
    RationalPoint x(r.begin(), r.end() - 1);
    if (sgn(r[d]) > 0)
      out.vertices.push_back(scale(x, 1 / r[d]));
    else
      out.rays.push_back(std::move(x));
  }
  if (out.vertices.empty()) return {};
  for (const auto& l : cone.lines) out.lines.emplace_back(l.begin(), l.end() - 1);
  std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
  std::sort(out.rays.begin(), out.rays.end(), lex_less);
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  return out;
}

std::vector<RationalPoint> cone_inequalities(const std::vector<RationalPoint>& generators,
                                             std::size_t dim) {
  auto dual = cone_generators(generators, dim);
  std::vector<RationalPoint> out = dual.rays;
  for (const auto& l : dual.lines) {
    out.push_back(l);
    out.push_back(scale(l, Rational(-1)));
  }
  return out;
}

bool cone_contains(const std::vector<RationalPoint>& generators, const RationalPoint& x) {
  if (generators.empty()) return is_zero(x);
  const std::size_t dim = x.size();
  RatMatrix a(dim, RationalPoint(generators.size()));
  for (std::size_t j = 0; j < generators.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) a[i][j] = generators[j][i];
  return nonnegative_solution(a, x, generators.size()).has_value();
}

std::vector<std::size_t> extreme_generators(const std::vector<RationalPoint>& generators,
                                            std::size_t dim) {
  (void)dim;
  std::vector<RationalPoint> dirs;
  for (const auto& g : generators) dirs.push_back(integral(g));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    bool duplicate = false;
    for (std::size_t j = 0; j < i; ++j)
      if (dirs[j] == dirs[i]) duplicate = true;
    if (duplicate) continue;
    std::vector<RationalPoint> others;
    for (std::size_t j = 0; j < dirs.size(); ++j)
      if (dirs[j] != dirs[i]) others.push_back(dirs[j]);
    if (!cone_contains(others, dirs[i])) out.push_back(i);
  }
  return out;
}

std::vector<std::vector<std::size_t>> cone_facets(const std::vector<RationalPoint>& generators,
                                                  std::size_t dim) {
  auto dual = cone_generators(generators, dim);
  std::set<std::vector<std::size_t>> facets;
  for (const auto& y : dual.rays) {
    std::vector<std::size_t> f;
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (sgn(dot(y, generators[i])) == 0) f.push_back(i);
    facets.insert(std::move(f));
  }
  return {facets.begin(), facets.end()};
}

// ---------------------------------------------------------------------------
// Planar geometry.

std::vector<RationalPoint> convex_hull_2d(std::vector<RationalPoint> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 1) return pts;
  std::vector<RationalPoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && sgn(cross(hull[k - 2], hull[k - 1], pts[i])) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && sgn(cross(hull[k - 2], hull[k - 1], pts[i])) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

Rational polygon_area(const std::vector<RationalPoint>& ccw) {
  Rational twice = 0;
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const auto& p = ccw[i];
    const auto& q = ccw[(i + 1) % ccw.size()];
    twice += p[0] * q[1] - p[1] * q[0];
  }
  return twice / 2;
}

Polyhedron hull_polyhedron_2d(const std::vector<RationalPoint>& points) {
  Polyhedron p;
  p.dim = 2;
  auto hull = convex_hull_2d(points);
  auto add = [&](Rational a, Rational b, Rational off) {
    p.inequalities.push_back({RationalPoint{a, b}, off});
  };
  if (hull.empty()) {
    add(0, 0, 1);
  } else if (hull.size() == 1) {
    add(1, 0, hull[0][0]);
    add(-1, 0, -hull[0][0]);
    add(0, 1, hull[0][1]);
    add(0, -1, -hull[0][1]);
  } else if (hull.size() == 2) {
    const auto& a = hull[0];
    const auto& b = hull[1];
    Rational dx = b[0] - a[0], dy = b[1] - a[1];
    // normal to the segment, both orientations
    add(-dy, dx, -dy * a[0] + dx * a[1]);
    add(dy, -dx, dy * a[0] - dx * a[1]);
    add(dx, dy, dx * a[0] + dy * a[1]);
    add(-dx, -dy, -dx * b[0] - dy * b[1]);
  } else {
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const auto& a = hull[i];
      const auto& b = hull[(i + 1) % hull.size()];
      Rational nx = -(b[1] - a[1]), ny = b[0] - a[0];
      add(nx, ny, nx * a[0] + ny * a[1]);
    }
  }
  return p;
}

std::optional<Line2> normalize_line(const Line2& line) {
  if (sgn(line.a) == 0 && sgn(line.b) == 0) return std::nullopt;
  auto dir = integral_direction(RationalPoint{line.a, line.b, line.c});
  if (sgn(dir[0]) < 0 || (sgn(dir[0]) == 0 && sgn(dir[1]) < 0))
    for (auto& x : dir) x = -x;
  return Line2{Rational(dir[0]), Rational(dir[1]), Rational(dir[2])};
}

std::size_t Arrangement::interior_edge_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [](const ArrangementEdge& e) { return !e.on_boundary(); }));
}

std::size_t Arrangement::interior_vertex_count() const {
  std::vector<bool> on_boundary(vertices.size(), false);
  for (const auto& e : edges)
    if (e.on_boundary()) on_boundary[e.v0] = on_boundary[e.v1] = true;
  return static_cast<std::size_t>(std::count(on_boundary.begin(), on_boundary.end(), false));
}

Arrangement line_arrangement_2d(const std::vector<Line2>& lines, const Polyhedron& region) {
  auto v = vertex_enumeration(region);
  return line_arrangement_2d(lines, convex_hull_2d(v.vertices));
}

Arrangement line_arrangement_2d(const std::vector<Line2>& raw_lines,
                                const std::vector<RationalPoint>& region_ccw) {
  Arrangement arr;
  if (region_ccw.size() < 3) return arr;

  std::set<std::vector<Rational>> seen;
  std::vector<Line2> lines;
  for (const auto& l : raw_lines) {
    auto n = normalize_line(l);
    if (!n) continue;
    if (seen.insert({n->a, n->b, n->c}).second) lines.push_back(*n);
  }
  std::sort(lines.begin(), lines.end(), [](const Line2& x, const Line2& y) {
    return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
  });

  std::vector<std::vector<RationalPoint>> polys{region_ccw};
  for (const auto& line : lines) {
    std::vector<std::vector<RationalPoint>> next;
    for (auto& poly : polys) {
      std::vector<Rational> val(poly.size());
      bool pos = false, neg = false;
      for (std::size_t i = 0; i < poly.size(); ++i) {
        val[i] = line.eval(poly[i]);
        pos = pos || sgn(val[i]) > 0;
        neg = neg || sgn(val[i]) < 0;
      }
      if (!(pos && neg)) {
        next.push_back(std::move(poly));
        continue;
      }
      std::vector<RationalPoint> plus, minus;
      for (std::size_t i = 0; i < poly.size(); ++i) {
        std::size_t j = (i + 1) % poly.size();
        if (sgn(val[i]) >= 0) plus.push_back(poly[i]);
        if (sgn(val[i]) <= 0) minus.push_back(poly[i]);
        if (sgn(val[i]) * sgn(val[j]) < 0) {
          Rational lambda = val[i] / (val[i] - val[j]);
          RationalPoint x = axpy(poly[i], lambda, sub(poly[j], poly[i]));
          plus.push_back(x);
          minus.push_back(x);
        }
      }
      next.push_back(std::move(plus));
      next.push_back(std::move(minus));
    }
    polys = std::move(next);
  }

  std::map<RationalPoint, std::size_t, LexLess> index;
  auto vertex_id = [&](const RationalPoint& p) {
    auto it = index.find(p);
    if (it != index.end()) return it->second;
    index.emplace(p, arr.vertices.size());
    arr.vertices.push_back(p);
    return arr.vertices.size() - 1;
  };
  std::vector<std::vector<std::size_t>> cell_ids;
  for (const auto& poly : polys) {
    std::vector<std::size_t> ids;
    for (const auto& p : poly) ids.push_back(vertex_id(p));
    cell_ids.push_back(std::move(ids));
  }
  // Resolve T-junctions: insert every global vertex lying inside a cell edge.
  for (auto& ids : cell_ids) {
    std::vector<std::size_t> fixed;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto& a = arr.vertices[ids[i]];
      const auto& b = arr.vertices[ids[(i + 1) % ids.size()]];
      fixed.push_back(ids[i]);
      std::vector<std::pair<Rational, std::size_t>> inner;
      RationalPoint d = sub(b, a);
      Rational len2 = dot(d, d);
      for (std::size_t v = 0; v < arr.vertices.size(); ++v) {
        const auto& p = arr.vertices[v];
        if (sgn(cross(a, b, p)) != 0) continue;
        Rational tpar = dot(sub(p, a), d) / len2;
        if (sgn(tpar) > 0 && tpar < 1) inner.emplace_back(tpar, v);
      }
      std::sort(inner.begin(), inner.end());
      for (auto& [tp, v] : inner) fixed.push_back(v);
    }
    ids = std::move(fixed);
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_index;
  for (std::size_t c = 0; c < cell_ids.size(); ++c) {
    const auto& ids = cell_ids[c];
    ArrangementCell cell;
    cell.vertices = ids;
    RationalPoint sum{0, 0};
    std::vector<RationalPoint> pts;
    for (auto id : ids) {
      sum = add(sum, arr.vertices[id]);
      pts.push_back(arr.vertices[id]);
    }
    cell.interior_point = scale(sum, Rational(1, static_cast<unsigned long>(ids.size())));
    cell.area = polygon_area(pts);
    arr.cells.push_back(std::move(cell));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      auto key = std::minmax(ids[i], ids[(i + 1) % ids.size()]);
      auto it = edge_index.find(key);
      if (it == edge_index.end()) {
        edge_index.emplace(key, arr.edges.size());
        arr.edges.push_back({key.first, key.second, {c}});
      } else {
        arr.edges[it->second].cells.push_back(c);
      }
    }
  }
  return arr;
}

}  // namespace toric
