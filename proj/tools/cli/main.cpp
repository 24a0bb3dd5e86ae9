// toric: command-line front end for the exact toric MMP / Sarkisov engine.
//
//   toric check FAN
//   toric mmp FAN DIVISOR [--strategy NAME] [--seed N]
//   toric geography FAN [DIVISOR] [--slice FILE] [--svg OUT]
//   toric sarkisov FAN DIVISOR --run-a STRATEGY[/SEED] --run-b STRATEGY[/SEED] [--svg OUT]
//
// FAN is a JSON file or "catalog:NAME"; DIVISOR is a JSON file, "K" or "antiK"
// ("-K" works after a "--" separator).
// Output is JSON on stdout (or --out), byte-identical for identical inputs.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "svg.hpp"
#include "toric/catalog.hpp"
#include "toric/sarkisov.hpp"
#include "toric_io.hpp"

using namespace toric;
using io::json;

namespace {

enum Exit { kOk = 0, kInput = 2, kEngine = 3, kGenericity = 4, kNoMfs = 5 };

struct NoMfsError : ToricError {
  using ToricError::ToricError;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("TORIC_SEED");
  if (!env || !*env) return 0;
  char* end = nullptr;
  auto v = std::strtoull(env, &end, 10);
  if (*end) throw InputError(std::string("TORIC_SEED is not an unsigned integer: '") + env + "'");
  return v;
}

Fan load_fan(const std::string& arg) {
  if (arg.rfind("catalog:", 0) == 0) return catalog::by_name(arg.substr(8));
  return io::decode_fan(io::read_file(arg));
}

TorusDivisor load_divisor(const std::string& arg, const Fan& z) {
  TorusDivisor d;
  if (arg == "K") d = canonical_divisor(z);
  else if (arg == "-K" || arg == "antiK") d = scale(canonical_divisor(z), Rational(-1));
  else d = io::decode_divisor(io::read_file(arg));
  if (d.size() != z.rays.size())
    throw InputError("divisor has " + std::to_string(d.size()) + " coefficients, fan has " +
                     std::to_string(z.rays.size()) + " rays");
  return d;
}

void require_mmp_ready(const Fan& z) {
  auto diag = validate_fan(z);
  if (!diag.valid) throw InputError("invalid fan: " + diag.message);
  if (!is_complete(z)) throw InputError("fan is not complete");
  if (!is_simplicial(z)) throw InputError("fan is not simplicial");
  if (!is_projective(z).projective()) throw InputError("fan is not projective");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

Strategy parse_run(const std::string& spec) {
  // Accepts "strategy", "strategy/seed" or "seed/strategy".
  auto slash = spec.find('/');
  if (slash == std::string::npos) return Strategy::parse(spec, 0);
  std::string a = spec.substr(0, slash), b = spec.substr(slash + 1);
  auto numeric = [](const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
  };
  if (numeric(a) && !numeric(b)) std::swap(a, b);
  if (!numeric(b)) throw InputError("run '" + spec + "' needs the form strategy/seed");
  return Strategy::parse(a, std::stoull(b));
}

json strategy_json(const Strategy& s) {
  json j;
  j["strategy"] = s.name();
  j["seed"] = s.seed;
  return j;
}

// --- check -------------------------------------------------------------------

int cmd_check(const std::string& fan_arg, const std::string& out) {
  Fan z = load_fan(fan_arg);
  json r;
  r["rank"] = z.rank;
  r["rays"] = z.rays.size();
  auto diag = validate_fan(z);
  r["valid"] = diag.valid;
  if (!diag.valid) {
    r["message"] = diag.message;
    if (diag.violating_pair) r["violating_pair"] = {diag.violating_pair->first, diag.violating_pair->second};
    write_text(out, io::dump(r));
    return kInput;
  }
  bool complete = is_complete(z), simplicial = is_simplicial(z);
  r["complete"] = complete;
  r["simplicial"] = simplicial;
  if (complete && simplicial) {
    auto cert = is_projective(z);
    r["projective"] = cert.projective();
    r["projectivity_certificate"] = cert.ample_divisor ? json{{"ample_divisor", io::encode(*cert.ample_divisor)}}
                                                       : json{{"farkas", io::encode(*cert.farkas)}};
  } else {
    r["projective"] = nullptr;
  }
  r["terminal"] = simplicial ? json(is_terminal(z)) : json(nullptr);
  r["picard_number"] = complete ? json(picard_number(z)) : json(nullptr);
  write_text(out, io::dump(r));
  return kOk;
}

// --- mmp ---------------------------------------------------------------------

int cmd_mmp(const std::string& fan_arg, const std::string& div_arg, const std::string& strategy, std::uint64_t seed,
            const std::string& out) {
  Fan z = load_fan(fan_arg);
  require_mmp_ready(z);
  auto d = load_divisor(div_arg, z);
  auto st = Strategy::parse(strategy, seed);
  auto trace = run_mmp(z, d, st);
  auto report = verify_output(trace);
  json r = strategy_json(st);
  r["trace"] = io::encode(trace);
  r["verification"] = io::encode(report);
  write_text(out, io::dump(r));
  if (!report.ok()) throw EngineError("verify_output rejected the trace: " + report.failures.front());
  return kOk;
}

// --- geography -----------------------------------------------------------------

Polyhedron box(const Rational& s0, const Rational& s1, const Rational& t0, const Rational& t1) {
  Polyhedron p;
  p.dim = 2;
  p.inequalities = {{{1, 0}, s0}, {{-1, 0}, -s1}, {{0, 1}, t0}, {{0, -1}, -t1}};
  return p;
}

GeographySlice slice_from_spec(const Fan& z, const json& spec, const std::optional<TorusDivisor>& d, unsigned jobs) {
  auto dir = [&](const char* key) {
    auto it = spec.find(key);
    if (it == spec.end()) throw InputError(std::string("slice spec is missing '") + key + "'");
    auto v = io::decode_divisor(*it);
    if (v.size() != z.rays.size()) throw InputError(std::string("slice spec '") + key + "' has the wrong length");
    return v;
  };
  TorusDivisor origin;
  if (spec.contains("origin")) origin = dir("origin");
  else if (d) origin = *d;
  else throw InputError("slice spec has no origin and no divisor was given");
  Polyhedron region;
  if (spec.contains("region") && spec["region"].contains("inequalities")) {
    region = io::decode_polyhedron(spec["region"]);
  } else {
    json s = spec.contains("region") ? spec["region"].value("s", json::array({"-1", "1"})) : json::array({"-1", "1"});
    json t = spec.contains("region") ? spec["region"].value("t", json::array({"-1", "1"})) : json::array({"-1", "1"});
    if (!s.is_array() || s.size() != 2 || !t.is_array() || t.size() != 2)
      throw InputError("slice region needs \"s\": [lo, hi] and \"t\": [lo, hi]");
    region = box(io::decode_rational(s[0]), io::decode_rational(s[1]), io::decode_rational(t[0]),
                 io::decode_rational(t[1]));
  }
  if (region.dim != 2) throw InputError("slice region must live in the (s,t) plane");
  return chamber_decomposition(z, origin, dir("dir_s"), dir("dir_t"), region, jobs);
}

int cmd_geography(const std::string& fan_arg, const std::string& div_arg, const std::string& slice_arg,
                  std::uint64_t seed, unsigned jobs, const std::string& svg, const std::string& out) {
  Fan z = load_fan(fan_arg);
  require_mmp_ready(z);
  std::optional<TorusDivisor> d;
  if (!div_arg.empty()) d = load_divisor(div_arg, z);
  GeographySlice g;
  if (slice_arg.empty() || slice_arg == "auto") {
    g = corpus_slice(z, seed, jobs);
    if (d) g = chamber_decomposition(z, *d, g.dir_s, g.dir_t, g.region, jobs);
  } else {
    g = slice_from_spec(z, io::read_file(slice_arg), d, jobs);
  }
  auto checks = verify_span_picard(g, seed);
  json r;
  r["seed"] = seed;
  std::size_t two_dim = 0;
  for (const auto& c : g.chambers) two_dim += c.dim == 2;
  r["two_dimensional_chambers"] = two_dim;
  r["slice"] = io::encode(g);
  r["checks"] = {{"ok", checks.ok()}, {"failures", checks.failures}};
  if (!svg.empty()) write_text(svg, io::render_svg(g, {std::nullopt, "geography of " + fan_arg}));
  write_text(out, io::dump(r));
  return kOk;
}

// --- sarkisov ------------------------------------------------------------------

int cmd_sarkisov(const std::string& fan_arg, const std::string& div_arg, const std::string& run_a,
                 const std::string& run_b, const SliceOptions& options, const std::string& svg,
                 const std::string& out) {
  Fan z = load_fan(fan_arg);
  require_mmp_ready(z);
  auto d = load_divisor(div_arg, z);
  auto sa = parse_run(run_a), sb = parse_run(run_b);
  auto ta = run_mmp(z, d, sa), tb = run_mmp(z, d, sb);
  if (ta.outcome != MMPOutcome::mori_fiber_space || tb.outcome != MMPOutcome::mori_fiber_space)
    throw NoMfsError("output is a minimal model, no MFS to connect");

  json r;
  r["run_a"] = strategy_json(sa);
  r["run_b"] = strategy_json(sb);
  r["slice_seed"] = options.seed;
  try {
    auto chain = factorize(z, d, ta, tb, options);
    auto report = verify_chain(chain);
    json links = json::array();
    for (const auto& l : chain.links) links.push_back(to_string(l.type));
    r["link_types"] = links;
    r["chain"] = io::encode(chain);
    r["verification"] = io::encode(report);
    if (!svg.empty()) {
      io::SvgOptions so;
      so.title = "Sarkisov chain on " + fan_arg;
      if (chain.slice) {
        const auto& ss = *chain.slice;
        const auto& g = ss.slice;
        so.arc = nonbig_boundary_arc(g, *g.find_chamber(ss.s), *g.find_chamber(ss.t), g.find_chamber(ss.x),
                                     g.find_chamber(ss.y));
        write_text(svg, io::render_svg(g, so));
      } else {
        write_text(svg, io::render_svg(GeographySlice{}, so));
      }
    }
    write_text(out, io::dump(r));
    if (!report.ok()) throw EngineError("verify_chain rejected the chain: " + report.failures.front());
  } catch (const GenericityError& e) {
    r["error"] = e.what();
    r["certificates"] = e.certificates;
    if (!svg.empty() && e.slice) write_text(svg, io::render_svg(*e.slice, {std::nullopt, e.what()}));
    write_text(out, io::dump(r));
    throw;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toric MMP, geography of models and Sarkisov links"};
  app.require_subcommand(1);

  std::string out, fan_arg, div_arg;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool seed_given = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--out", out, "Write JSON here instead of stdout");
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& v) { seed = v, seed_given = true; },
        "Random seed (default: $TORIC_SEED or 0)");
  };

  auto* check = app.add_subcommand("check", "Validity, completeness, simpliciality, projectivity, terminality");
  check->add_option("fan", fan_arg, "Fan JSON file or catalog:NAME")->required();
  add_common(check);

  std::string strategy = "deterministic-lex";
  auto* mmp = app.add_subcommand("mmp", "Run the D-MMP and verify its output");
  mmp->add_option("fan", fan_arg, "Fan JSON file or catalog:NAME")->required();
  mmp->add_option("divisor", div_arg, "Divisor JSON file, K or antiK")->required();
  mmp->add_option("--strategy", strategy, "deterministic-lex or seeded-random");
  add_seed(mmp);
  add_common(mmp);

  std::string slice_arg = "auto", svg;
  auto* geo = app.add_subcommand("geography", "Chamber decomposition of a 2-dimensional slice");
  geo->add_option("fan", fan_arg, "Fan JSON file or catalog:NAME")->required();
  geo->add_option("divisor", div_arg, "Origin of the slice (JSON file, K or antiK)");
  geo->add_option("--slice", slice_arg, "Slice spec JSON file, or auto");
  geo->add_option("--svg", svg, "Write an SVG figure");
  geo->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_seed(geo);
  add_common(geo);

  std::string run_a, run_b;
  SliceOptions slice_options;
  auto* sark = app.add_subcommand("sarkisov", "Factorize the map between two MFS outputs into links");
  sark->add_option("fan", fan_arg, "Fan JSON file or catalog:NAME")->required();
  sark->add_option("divisor", div_arg, "Divisor JSON file, K or antiK")->required();
  sark->add_option("--run-a", run_a, "First run: strategy[/seed]")->required();
  sark->add_option("--run-b", run_b, "Second run: strategy[/seed]")->required();
  sark->add_option("--retries", slice_options.retries, "Slice perturbation retries");
  sark->add_option("--svg", svg, "Write an SVG figure of the slice and arc");
  sark->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_seed(sark);
  add_common(sark);

  auto* cat = app.add_subcommand("catalog", "List the built-in fans or print one as JSON");
  std::string cat_name;
  cat->add_option("name", cat_name, "Fan name");
  add_common(cat);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!seed_given) seed = default_seed();
    if (*check) return cmd_check(fan_arg, out);
    if (*mmp) return cmd_mmp(fan_arg, div_arg, strategy, seed, out);
    if (*geo) return cmd_geography(fan_arg, div_arg, slice_arg, seed, jobs, svg, out);
    if (*sark) {
      slice_options.seed = seed;
      slice_options.jobs = jobs;
      return cmd_sarkisov(fan_arg, div_arg, run_a, run_b, slice_options, svg, out);
    }
    if (*cat) {
      if (cat_name.empty()) {
        std::string text;
        for (const auto& n : catalog::names()) text += n + "\n";
        write_text(out, text);
      } else {
        write_text(out, io::dump(io::encode(catalog::by_name(cat_name))));
      }
      return kOk;
    }
  } catch (const NoMfsError& e) {
    std::cerr << "toric: " << e.what() << "\n";
    return kNoMfs;
  } catch (const GenericityError& e) {
    std::cerr << "toric: " << e.what() << "\n";
    for (const auto& c : e.certificates) std::cerr << "  " << c << "\n";
    return kGenericity;
  } catch (const InputError& e) {
    std::cerr << "toric: " << e.what() << "\n";
    return kInput;
  } catch (const ToricError& e) {
    std::cerr << "toric: " << e.what() << "\n";
    return kEngine;
  } catch (const std::exception& e) {
    std::cerr << "toric: internal error: " << e.what() << "\n";
    return kEngine;
  }
  return kOk;
}
