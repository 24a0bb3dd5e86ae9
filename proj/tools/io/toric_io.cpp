#include "toric_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace toric::io {

namespace {

template <class T, class F>
json array_of(const std::vector<T>& items, F&& f) {
  json out = json::array();
  for (const auto& x : items) out.push_back(f(x));
  return out;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

const json& array_field(const json& j, const char* key) {
  const auto& a = field(j, key);
  if (!a.is_array()) throw InputError(std::string("field '") + key + "' must be an array");
  return a;
}

template <class F>
auto decode_array(const json& j, F&& f) {
  if (!j.is_array()) throw InputError("expected an array");
  std::vector<decltype(f(j))> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(f(x));
  return out;
}

std::size_t decode_index(const json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw InputError("expected a non-negative index, got " + j.dump());
  return j.get<std::size_t>();
}

std::vector<std::size_t> decode_indices(const json& j) { return decode_array(j, decode_index); }

json encode_indices(const std::vector<std::size_t>& v) { return array_of(v, [](std::size_t i) { return json(i); }); }

std::optional<ToricModel> decode_optional_model(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return decode_model(*it);
}

json encode_optional(const std::optional<ToricModel>& m) { return m ? encode(*m) : json(nullptr); }

std::string morphism_kind(FanMorphism::Kind k) {
  switch (k) {
    case FanMorphism::Kind::refinement: return "refinement";
    case FanMorphism::Kind::projection: return "projection";
    case FanMorphism::Kind::mixed: return "mixed";
  }
  return "?";
}

template <class E, std::size_t N>
E decode_enum(const json& j, const E (&values)[N], const char* what) {
  if (!j.is_string()) throw InputError(std::string("expected a string naming a ") + what);
  for (auto v : values)
    if (to_string(v) == j.get<std::string>()) return v;
  throw InputError(std::string("unknown ") + what + " '" + j.get<std::string>() + "'");
}

}  // namespace

json parse_document(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    auto colon = msg.find("syntax error");
    if (colon != std::string::npos) msg = msg.substr(colon);
    throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg);
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --- scalars and vectors ---------------------------------------------------

json encode(const Rational& q) { return q.get_str(); }

json encode(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<long long>(z.get_si());
  return z.get_str();
}

json encode(const RationalPoint& v) { return array_of(v, [](const Rational& q) { return encode(q); }); }
json encode(const LatticeVector& v) { return array_of(v, [](const Integer& z) { return encode(z); }); }
json encode(const IntMatrix& a) { return array_of(a, [](const LatticeVector& r) { return encode(r); }); }

Rational decode_rational(const json& j) {
  if (j.is_number_integer()) return Rational(decode_integer(j));
  if (!j.is_string()) throw InputError("rational numbers must be strings \"p/q\" or integers, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

Integer decode_integer(const json& j) {
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    auto q = parse_rational(j.get<std::string>());
    if (q.get_den() != 1) throw InputError("expected an integer, got " + j.dump());
    return q.get_num();
  }
  throw InputError("expected an integer, got " + j.dump());
}

RationalPoint decode_point(const json& j) { return decode_array(j, decode_rational); }
LatticeVector decode_lattice(const json& j) { return decode_array(j, decode_integer); }
IntMatrix decode_matrix(const json& j) { return decode_array(j, decode_lattice); }

// --- fans and models -------------------------------------------------------

json encode(const Fan& f) {
  json j;
  j["rank"] = f.rank;
  j["rays"] = encode(f.rays);
  j["max_cones"] = array_of(f.max_cones, encode_indices);
  return j;
}

Fan decode_fan(const json& j) {
  Fan f;
  f.rank = decode_index(field(j, "rank"));
  f.rays = decode_matrix(array_field(j, "rays"));
  f.max_cones = decode_array(array_field(j, "max_cones"), decode_indices);
  for (std::size_t i = 0; i < f.rays.size(); ++i)
    if (f.rays[i].size() != f.rank)
      throw InputError("ray " + std::to_string(i) + " has " + std::to_string(f.rays[i].size()) +
                       " entries, rank is " + std::to_string(f.rank));
  for (auto& c : f.max_cones) {
    for (auto r : c)
      if (r >= f.rays.size()) throw InputError("cone refers to ray " + std::to_string(r) + " which does not exist");
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw InputError("cone lists a ray twice");
  }
  return f;
}

json encode_divisor(const TorusDivisor& d) {
  json j;
  j["coeffs"] = encode(d);
  return j;
}

TorusDivisor decode_divisor(const json& j) {
  if (j.is_array()) return decode_point(j);
  return decode_point(array_field(j, "coeffs"));
}

json encode(const ToricModel& m) {
  json j;
  j["fan"] = encode(m.fan);
  j["lattice_map"] = encode(m.lattice_map);
  return j;
}

ToricModel decode_model(const json& j) {
  ToricModel m;
  m.fan = decode_fan(field(j, "fan"));
  m.lattice_map = decode_matrix(field(j, "lattice_map"));
  return m;
}

json encode(const FanMorphism& m) {
  json j;
  j["kind"] = morphism_kind(m.kind);
  j["source"] = encode(m.source);
  j["target"] = encode(m.target);
  j["lattice_map"] = encode(m.lattice_map);
  return j;
}

FanMorphism decode_morphism(const json& j) {
  FanMorphism m;
  const auto& kind = field(j, "kind");
  if (kind == "refinement") m.kind = FanMorphism::Kind::refinement;
  else if (kind == "projection") m.kind = FanMorphism::Kind::projection;
  else if (kind == "mixed") m.kind = FanMorphism::Kind::mixed;
  else throw InputError("unknown morphism kind " + kind.dump());
  m.source = decode_model(field(j, "source"));
  m.target = decode_model(field(j, "target"));
  m.lattice_map = decode_matrix(field(j, "lattice_map"));
  return m;
}

// --- MMP -------------------------------------------------------------------

json encode(const ContractionStep& s) {
  json j;
  j["kind"] = to_string(s.kind);
  j["relation"] = encode(s.relation);
  j["j_plus"] = encode_indices(s.j_plus);
  j["j_minus"] = encode_indices(s.j_minus);
  j["source"] = encode(s.source);
  j["target"] = encode(s.target);
  j["target_ample"] = encode(s.target_ample);
  j["flipped"] = encode_optional(s.flipped);
  return j;
}

ContractionStep decode_step(const json& j) {
  static const ContractionKind kinds[] = {ContractionKind::divisorial, ContractionKind::flip, ContractionKind::fiber};
  ContractionStep s;
  s.kind = decode_enum(field(j, "kind"), kinds, "contraction kind");
  s.relation = decode_lattice(field(j, "relation"));
  s.j_plus = decode_indices(field(j, "j_plus"));
  s.j_minus = decode_indices(field(j, "j_minus"));
  s.source = decode_model(field(j, "source"));
  s.target = decode_model(field(j, "target"));
  s.target_ample = decode_point(field(j, "target_ample"));
  s.flipped = decode_optional_model(j, "flipped");
  return s;
}

json encode(const MMPTrace& t) {
  json j;
  j["start"] = encode(t.start);
  j["divisor"] = encode(t.divisor);
  j["steps"] = array_of(t.steps, [](const ContractionStep& s) { return encode(s); });
  j["outcome"] = to_string(t.outcome);
  j["result"] = encode(t.result);
  j["result_divisor"] = encode(t.result_divisor);
  j["base"] = encode_optional(t.base);
  j["base_ample"] = encode(t.base_ample);
  return j;
}

MMPTrace decode_trace(const json& j) {
  static const MMPOutcome outcomes[] = {MMPOutcome::minimal_model, MMPOutcome::mori_fiber_space};
  MMPTrace t;
  t.start = decode_model(field(j, "start"));
  t.divisor = decode_point(field(j, "divisor"));
  t.steps = decode_array(array_field(j, "steps"), decode_step);
  t.outcome = decode_enum(field(j, "outcome"), outcomes, "outcome");
  t.result = decode_model(field(j, "result"));
  t.result_divisor = decode_point(field(j, "result_divisor"));
  t.base = decode_optional_model(j, "base");
  t.base_ample = decode_point(field(j, "base_ample"));
  return t;
}

json encode(const VerificationReport& r) {
  json j;
  j["ok"] = r.ok();
  j["failures"] = r.failures;
  return j;
}

// --- geography -------------------------------------------------------------

json encode(const Polyhedron& p) {
  json j;
  j["dim"] = p.dim;
  j["inequalities"] = array_of(p.inequalities, [](const Inequality& h) {
    json e;
    e["normal"] = encode(h.normal);
    e["offset"] = encode(h.offset);
    return e;
  });
  return j;
}

Polyhedron decode_polyhedron(const json& j) {
  Polyhedron p;
  p.dim = decode_index(field(j, "dim"));
  p.inequalities = decode_array(array_field(j, "inequalities"), [](const json& e) {
    return Inequality{decode_point(field(e, "normal")), decode_rational(field(e, "offset"))};
  });
  return p;
}

json encode(const GeographySlice& s) {
  json j;
  j["base"] = encode(s.base);
  j["origin"] = encode(s.origin);
  j["dir_s"] = encode(s.dir_s);
  j["dir_t"] = encode(s.dir_t);
  j["region"] = encode(s.region);
  j["region_polygon"] = array_of(s.region_polygon, [](const RationalPoint& p) { return encode(p); });
  j["effective"] = array_of(s.effective, [](const RationalPoint& p) { return encode(p); });
  j["effective_area"] = encode(s.effective_area());
  j["points"] = array_of(s.points, [](const RationalPoint& p) { return encode(p); });
  j["strata"] = array_of(s.strata, [](const Stratum& st) {
    json e;
    e["dim"] = st.dim;
    e["vertices"] = encode_indices(st.vertices);
    e["sample"] = encode(st.sample);
    e["chamber"] = st.chamber;
    e["cells"] = encode_indices(st.cells);
    return e;
  });
  j["chambers"] = array_of(s.chambers, [](const Chamber& c) {
    json e;
    e["key"] = c.key;
    e["dim"] = c.dim;
    e["big"] = c.big;
    e["model"] = encode(c.model);
    e["strata"] = encode_indices(c.strata);
    e["vertices"] = encode_indices(c.vertices);
    e["closure"] = array_of(c.closure, [](const RationalPoint& p) { return encode(p); });
    e["sample"] = encode(c.sample);
    e["area"] = encode(c.area);
    e["neighbors"] = encode_indices(c.neighbors);
    return e;
  });
  return j;
}

GeographySlice decode_slice(const json& j) {
  auto points = [](const json& a) { return decode_array(a, decode_point); };
  GeographySlice s;
  s.base = decode_fan(field(j, "base"));
  s.origin = decode_point(field(j, "origin"));
  s.dir_s = decode_point(field(j, "dir_s"));
  s.dir_t = decode_point(field(j, "dir_t"));
  s.region = decode_polyhedron(field(j, "region"));
  s.region_polygon = points(field(j, "region_polygon"));
  s.effective = points(field(j, "effective"));
  s.points = points(field(j, "points"));
  s.strata = decode_array(array_field(j, "strata"), [](const json& e) {
    Stratum st;
    st.dim = field(e, "dim").get<int>();
    st.vertices = decode_indices(field(e, "vertices"));
    st.sample = decode_point(field(e, "sample"));
    st.chamber = decode_index(field(e, "chamber"));
    st.cells = decode_indices(field(e, "cells"));
    return st;
  });
  s.chambers = decode_array(array_field(j, "chambers"), [&](const json& e) {
    Chamber c;
    c.key = field(e, "key").get<std::string>();
    c.dim = field(e, "dim").get<int>();
    c.big = field(e, "big").get<bool>();
    c.model = decode_model(field(e, "model"));
    c.strata = decode_indices(field(e, "strata"));
    c.vertices = decode_indices(field(e, "vertices"));
    c.closure = points(field(e, "closure"));
    c.sample = decode_point(field(e, "sample"));
    c.area = decode_rational(field(e, "area"));
    c.neighbors = decode_indices(field(e, "neighbors"));
    return c;
  });
  for (const auto& st : s.strata)
    if (st.chamber >= s.chambers.size()) throw InputError("stratum refers to a missing chamber");
  return s;
}

json encode(const SarkisovSlice& s) {
  json j;
  j["seed"] = s.seed;
  j["attempts"] = s.attempts;
  j["divisor"] = encode(s.divisor);
  j["x"] = encode(s.x);
  j["s"] = encode(s.s);
  j["y"] = encode(s.y);
  j["t"] = encode(s.t);
  j["slice"] = encode(s.slice);
  return j;
}

SarkisovSlice decode_sarkisov_slice(const json& j) {
  SarkisovSlice s;
  s.seed = field(j, "seed").get<std::uint64_t>();
  s.attempts = decode_index(field(j, "attempts"));
  s.divisor = decode_point(field(j, "divisor"));
  s.x = decode_model(field(j, "x"));
  s.s = decode_model(field(j, "s"));
  s.y = decode_model(field(j, "y"));
  s.t = decode_model(field(j, "t"));
  s.slice = decode_slice(field(j, "slice"));
  return s;
}

// --- Sarkisov ---------------------------------------------------------------

json encode(const WallCrossingKind& w) {
  json j;
  j["tag"] = to_string(w.tag);
  j["from"] = encode(w.from);
  j["to"] = encode(w.to);
  j["wall_model"] = encode(w.wall_model);
  j["divisor_on_from"] = encode(w.divisor_on_from);
  j["map"] = w.map ? encode(*w.map) : json(nullptr);
  j["flop"] = w.flop ? encode(*w.flop) : json(nullptr);
  return j;
}

json encode(const SarkisovLink& l) {
  json j;
  j["type"] = to_string(l.type);
  j["case"] = l.case_tag;
  j["vertex"] = l.vertex;
  j["dagger"] = encode(l.dagger);
  j["k"] = l.k;
  j["rho_x_r"] = l.rho_x_r;
  j["rho_y_r"] = l.rho_y_r;
  j["note"] = l.note;
  j["x"] = encode(l.x);
  j["s"] = encode(l.s);
  j["y"] = encode(l.y);
  j["t"] = encode(l.t);
  j["r"] = encode(l.r);
  j["x_prime"] = encode_optional(l.x_prime);
  j["y_prime"] = encode_optional(l.y_prime);
  j["p"] = l.p ? encode(*l.p) : json(nullptr);
  j["q"] = l.q ? encode(*l.q) : json(nullptr);
  j["flops"] = array_of(l.flops, [](const ContractionStep& s) { return encode(s); });
  return j;
}

SarkisovLink decode_link(const json& j) {
  static const LinkType types[] = {LinkType::I, LinkType::II, LinkType::III, LinkType::IVm, LinkType::IVs};
  auto morphism = [&](const char* key) -> std::optional<FanMorphism> {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return decode_morphism(*it);
  };
  SarkisovLink l;
  l.type = decode_enum(field(j, "type"), types, "link type");
  l.case_tag = field(j, "case").get<int>();
  l.vertex = decode_index(field(j, "vertex"));
  l.dagger = decode_point(field(j, "dagger"));
  l.k = decode_index(field(j, "k"));
  l.rho_x_r = decode_index(field(j, "rho_x_r"));
  l.rho_y_r = decode_index(field(j, "rho_y_r"));
  l.note = field(j, "note").get<std::string>();
  l.x = decode_model(field(j, "x"));
  l.s = decode_model(field(j, "s"));
  l.y = decode_model(field(j, "y"));
  l.t = decode_model(field(j, "t"));
  l.r = decode_model(field(j, "r"));
  l.x_prime = decode_optional_model(j, "x_prime");
  l.y_prime = decode_optional_model(j, "y_prime");
  l.p = morphism("p");
  l.q = morphism("q");
  l.flops = decode_array(array_field(j, "flops"), decode_step);
  return l;
}

json encode(const SarkisovChain& c) {
  json j;
  j["start_x"] = encode(c.start_x);
  j["start_s"] = encode(c.start_s);
  j["end_y"] = encode(c.end_y);
  j["end_t"] = encode(c.end_t);
  j["links"] = array_of(c.links, [](const SarkisovLink& l) { return encode(l); });
  j["slice"] = c.slice ? encode(*c.slice) : json(nullptr);
  return j;
}

SarkisovChain decode_chain(const json& j) {
  SarkisovChain c;
  c.start_x = decode_model(field(j, "start_x"));
  c.start_s = decode_model(field(j, "start_s"));
  c.end_y = decode_model(field(j, "end_y"));
  c.end_t = decode_model(field(j, "end_t"));
  c.links = decode_array(array_field(j, "links"), decode_link);
  auto it = j.find("slice");
  if (it != j.end() && !it->is_null()) c.slice = decode_sarkisov_slice(*it);
  return c;
}

}  // namespace toric::io
