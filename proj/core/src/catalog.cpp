#include "toric/catalog.hpp"

#include <algorithm>
#include <functional>
#include <utility>

namespace toric::catalog {

namespace {

Fan cyclic_surface(std::vector<std::pair<long, long>> rays) {
  Fan f;
  f.rank = 2;
  for (auto [x, y] : rays) f.rays.push_back({Integer(x), Integer(y)});
  for (std::size_t i = 0; i < rays.size(); ++i) {
    Cone c{i, (i + 1) % rays.size()};
    std::sort(c.begin(), c.end());
    f.max_cones.push_back(c);
  }
  return canonical(f);
}

Fan pyramid_with(std::vector<Cone> base_cones) {
  Fan f;
  f.rank = 3;
  // w0, a, b, c, d
  f.rays = {{0, 0, 1}, {1, 0, -1}, {0, 1, -1}, {-1, 0, -1}, {0, -1, -1}};
  f.max_cones = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 1, 4}};
  for (auto& c : base_cones) f.max_cones.push_back(c);
  return canonical(f);
}

const std::vector<std::pair<std::string, std::function<Fan()>>>& table() {
  static const std::vector<std::pair<std::string, std::function<Fan()>>> t = {
      {"P1", projective_line},
      {"P2", projective_plane},
      {"F1", [] { return hirzebruch(1); }},
      {"F2", [] { return hirzebruch(2); }},
      {"Bl2P2", blowup_plane_two_points},
      {"P1xP1", p1_x_p1},
      {"P112", weighted_p112},
      {"P1xP1xP1", p1_cubed},
      {"flop-S", pyramid_small_s},
      {"flop-T", pyramid_small_t},
      {"flop-resolved", pyramid_resolved},
      {"pyramid", pyramid},
      {"twisted-prism", twisted_prism},
  };
  return t;
}

}  // namespace

Fan projective_line() {
  Fan f;
  f.rank = 1;
  f.rays = {{1}, {-1}};
  f.max_cones = {{0}, {1}};
  return canonical(f);
}

Fan projective_plane() { return cyclic_surface({{1, 0}, {0, 1}, {-1, -1}}); }

Fan hirzebruch(int a) { return cyclic_surface({{1, 0}, {0, 1}, {-1, a}, {0, -1}}); }

Fan blowup_plane_two_points() { return cyclic_surface({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}}); }

Fan p1_x_p1() { return product(projective_line(), projective_line()); }

Fan weighted_p112() { return cyclic_surface({{1, 0}, {0, 1}, {-1, -2}}); }

Fan p1_cubed() { return product(p1_x_p1(), projective_line()); }

Fan pyramid() { return pyramid_with({{1, 2, 3, 4}}); }

Fan pyramid_small_s() { return pyramid_with({{1, 2, 3}, {1, 3, 4}}); }

Fan pyramid_small_t() { return pyramid_with({{1, 2, 4}, {2, 3, 4}}); }

Fan pyramid_resolved() { return star_subdivision(pyramid_small_s(), {0, 0, -1}); }

Fan twisted_prism() {
  Fan f;
  f.rank = 3;
  // a_i at height -1, b_i at height +1
  f.rays = {{1, 0, -1}, {0, 1, -1}, {-1, -1, -1}, {1, 0, 1}, {0, 1, 1}, {-1, -1, 1}};
  f.max_cones = {{0, 1, 2}, {3, 4, 5}};
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t j = (i + 1) % 3;
    Cone c1{i, j, j + 3}, c2{i, j + 3, i + 3};
    std::sort(c1.begin(), c1.end());
    std::sort(c2.begin(), c2.end());
    f.max_cones.push_back(c1);
    f.max_cones.push_back(c2);
  }
  return canonical(f);
}

std::vector<Entry> corpus() {
  return {{"P2", projective_plane()},       {"F1", hirzebruch(1)},         {"F2", hirzebruch(2)},
          {"Bl2P2", blowup_plane_two_points()}, {"P1xP1", p1_x_p1()},      {"P112", weighted_p112()},
          {"P1xP1xP1", p1_cubed()},         {"flop-S", pyramid_small_s()}};
}

Fan by_name(const std::string& name) {
  for (const auto& [key, make] : table())
    if (key == name) return make();
  throw InputError("unknown catalog fan '" + name + "'");
}

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& entry : table()) out.push_back(entry.first);
  return out;
}

}  // namespace toric::catalog
