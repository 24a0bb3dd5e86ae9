#pragma once

// JSON encoding of engine objects. Rationals travel as "p/q" strings and
// integers as JSON numbers (strings once they leave the 64-bit range), so a
// document round-trips exactly.

#include <json.hpp>

#include <string>

#include "toric/geography.hpp"
#include "toric/mmp.hpp"
#include "toric/sarkisov.hpp"

namespace toric::io {

using json = nlohmann::ordered_json;

/// Parses a JSON document, reporting syntax errors as InputError with
/// line and column.
json parse_document(const std::string& text, const std::string& origin = "<input>");
json read_file(const std::string& path);
/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);

json encode(const Rational& q);
json encode(const Integer& z);
json encode(const RationalPoint& v);
json encode(const LatticeVector& v);
json encode(const IntMatrix& a);
json encode(const Fan& f);
json encode_divisor(const TorusDivisor& d);
json encode(const ToricModel& m);
json encode(const FanMorphism& m);
json encode(const ContractionStep& s);
json encode(const MMPTrace& t);
json encode(const VerificationReport& r);
json encode(const Polyhedron& p);
json encode(const GeographySlice& s);
json encode(const SarkisovSlice& s);
json encode(const WallCrossingKind& w);
json encode(const SarkisovLink& l);
json encode(const SarkisovChain& c);

Rational decode_rational(const json& j);
Integer decode_integer(const json& j);
RationalPoint decode_point(const json& j);
LatticeVector decode_lattice(const json& j);
IntMatrix decode_matrix(const json& j);
/// Checks shape only; validity is the caller's business (`check` reports it).
Fan decode_fan(const json& j);
TorusDivisor decode_divisor(const json& j);
ToricModel decode_model(const json& j);
FanMorphism decode_morphism(const json& j);
ContractionStep decode_step(const json& j);
MMPTrace decode_trace(const json& j);
Polyhedron decode_polyhedron(const json& j);
GeographySlice decode_slice(const json& j);
SarkisovSlice decode_sarkisov_slice(const json& j);
SarkisovLink decode_link(const json& j);
SarkisovChain decode_chain(const json& j);

}  // namespace toric::io
