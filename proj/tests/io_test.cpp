#include <doctest.h>

#include "svg.hpp"
#include "toric/catalog.hpp"
#include "toric/sarkisov.hpp"
#include "toric_io.hpp"

using namespace toric;
using io::json;

namespace {

// parse(serialize(x)) must serialize to the same bytes.
template <class T, class Decode>
void round_trips(const T& x, Decode decode) {
  auto text = io::dump(io::encode(x));
  auto back = decode(io::parse_document(text));
  CHECK(io::dump(io::encode(back)) == text);
}

MMPTrace run(const Fan& z, std::uint64_t seed) {
  return run_mmp(z, canonical_divisor(z), Strategy{Strategy::Kind::seeded_random, seed});
}

}  // namespace

TEST_CASE("rationals and big integers survive a round trip") {
  Rational q("-123456789012345678901234567891/7");
  q.canonicalize();
  CHECK(io::decode_rational(io::encode(q)) == q);
  Integer z("98765432109876543210987654321");
  CHECK(io::encode(z).is_string());
  CHECK(io::decode_integer(io::encode(z)) == z);
  CHECK(io::encode(Integer(-5)) == json(-5));
  CHECK(io::decode_rational(json(3)) == 3);
  CHECK_THROWS_AS(io::decode_rational(json(0.5)), InputError);
  CHECK_THROWS_AS(io::decode_integer(json("1/2")), InputError);
}

TEST_CASE("fans and divisors") {
  for (const auto& e : catalog::corpus()) {
    auto back = io::decode_fan(io::parse_document(io::dump(io::encode(e.fan))));
    CHECK(back == e.fan);
  }
  auto f = io::decode_fan(io::parse_document(R"({"rank": 2, "rays": [[1,0],[0,1],[-1,-1]],
      "max_cones": [[1,0],[1,2],[0,2]]})"));
  CHECK(f == catalog::projective_plane());
  auto d = io::decode_divisor(io::parse_document(R"({"coeffs": ["1/2", "-3", 4]})"));
  CHECK(d == TorusDivisor{Rational(1, 2), Rational(-3), Rational(4)});
  CHECK(io::decode_divisor(io::encode_divisor(d)) == d);
}

TEST_CASE("malformed fans are rejected with a reason") {
  CHECK_THROWS_WITH_AS(io::decode_fan(io::parse_document(R"({"rank": 2, "rays": [[1,0,0]], "max_cones": []})")),
                       doctest::Contains("entries"), InputError);
  CHECK_THROWS_WITH_AS(io::decode_fan(io::parse_document(R"({"rank": 2, "rays": [[1,0]], "max_cones": [[3]]})")),
                       doctest::Contains("does not exist"), InputError);
  CHECK_THROWS_WITH_AS(io::decode_fan(io::parse_document(R"({"rays": []})")), doctest::Contains("rank"),
                       InputError);
}

TEST_CASE("syntax errors carry line and column") {
  CHECK_THROWS_WITH_AS(io::parse_document("{\n  \"rank\": 2,\n  \"rays\": [[1, 0]] x\n}", "fan.json"),
                       doctest::Contains("fan.json:3:"), InputError);
}

TEST_CASE("traces round-trip") {
  round_trips(run(catalog::hirzebruch(1), 3), io::decode_trace);
  round_trips(run(catalog::pyramid_small_t(), 1), io::decode_trace);
  round_trips(run_mmp(catalog::p1_x_p1(), scale(canonical_divisor(catalog::p1_x_p1()), Rational(-1))),
              io::decode_trace);
}

TEST_CASE("slices and chains round-trip") {
  round_trips(corpus_slice(catalog::blowup_plane_two_points(), 2), io::decode_slice);

  Fan f1 = catalog::hirzebruch(1);
  auto chain = factorize(f1, canonical_divisor(f1), run(f1, 0), run(f1, 3));
  REQUIRE(chain.links.size() == 1);
  round_trips(chain, io::decode_chain);
  auto back = io::decode_chain(io::encode(chain));
  CHECK(verify_chain(back).ok());
  CHECK(back.links[0].type == chain.links[0].type);

  Fan p = catalog::projective_plane();
  auto same = factorize(p, canonical_divisor(p), run(p, 0), run(p, 0));
  round_trips(same, io::decode_chain);
}

TEST_CASE("svg output is deterministic and handles empty slices") {
  auto g = corpus_slice(catalog::hirzebruch(1), 0);
  auto a = io::render_svg(g), b = io::render_svg(g);
  CHECK(a == b);
  CHECK(a.rfind("<svg", 0) == 0);
  CHECK(a.find("id=\"effective\"") != std::string::npos);
  auto empty = io::render_svg(GeographySlice{});
  CHECK(empty.find("E(B) is empty") != std::string::npos);
  CHECK(empty.find("</svg>") != std::string::npos);
}
