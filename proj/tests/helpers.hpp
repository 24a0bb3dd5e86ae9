#pragma once

#include <initializer_list>
#include <string>

#include "toric/exact.hpp"

namespace toric::test {

inline Rational q(const std::string& s) { return parse_rational(s); }

inline RationalPoint qv(std::initializer_list<long> xs) {
  RationalPoint out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline LatticeVector zv(std::initializer_list<long> xs) {
  LatticeVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace toric::test
