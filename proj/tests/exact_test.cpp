#include <doctest.h>

#include "helpers.hpp"

using namespace toric;
using namespace toric::test;

TEST_CASE("primitive divides by the gcd") {
  CHECK(primitive(zv({2, 4})) == zv({1, 2}));
  CHECK(primitive(zv({1, 0, 0})) == zv({1, 0, 0}));
  CHECK(primitive(zv({-6, 9, -3})) == zv({-2, 3, -1}));
  CHECK_THROWS_WITH_AS(primitive(zv({0, 0})), "zero vector has no primitive representative", InputError);
}

namespace {

// U * A == H and |det U| == 1
void check_hermite(const IntMatrix& a, std::size_t cols) {
  auto hs = hermite_smith(a, cols);
  RatMatrix u = to_rational(hs.transform);
  CHECK(abs(determinant(u)) == 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Integer s = 0;
      for (std::size_t k = 0; k < a.size(); ++k) s += hs.transform[i][k] * a[k][j];
      CHECK(s == hs.hermite[i][j]);
    }
}

// Product of the first k invariant factors equals the gcd of the k-minors.
Integer gcd_of_minors(const IntMatrix& a, std::size_t cols, std::size_t k) {
  Integer g = 0;
  std::size_t rows = a.size();
  for (unsigned rmask = 0; rmask < (1u << rows); ++rmask) {
    if (static_cast<std::size_t>(__builtin_popcount(rmask)) != k) continue;
    for (unsigned cmask = 0; cmask < (1u << cols); ++cmask) {
      if (static_cast<std::size_t>(__builtin_popcount(cmask)) != k) continue;
      RatMatrix m;
      for (std::size_t i = 0; i < rows; ++i) {
        if (!(rmask >> i & 1)) continue;
        RationalPoint row;
        for (std::size_t j = 0; j < cols; ++j)
          if (cmask >> j & 1) row.push_back(a[i][j]);
        m.push_back(row);
      }
      Rational d = determinant(m);
      mpz_class num = d.get_num();
      g = gcd(g, num);
    }
  }
  return g;
}

}  // namespace

TEST_CASE("hermite_smith on the worked examples") {
  auto id = hermite_smith({zv({1, 0}), zv({0, 1})}, 2);
  CHECK(id.hermite == IntMatrix{zv({1, 0}), zv({0, 1})});
  CHECK(id.divisors == zv({1, 1}));

  IntMatrix diag{zv({2, 0}), zv({0, 3})};
  CHECK(hermite_smith(diag, 2).divisors == zv({1, 6}));
  check_hermite(diag, 2);

  auto deg = hermite_smith({zv({1, 1}), zv({0, 0})}, 2);
  CHECK(deg.hermite == IntMatrix{zv({1, 1}), zv({0, 0})});
  CHECK(deg.divisors == zv({1}));
}

TEST_CASE("Smith divisors agree with determinantal divisors") {
  std::vector<IntMatrix> cases = {
      {zv({4, 6, 2}), zv({2, 8, 10}), zv({6, 0, 4})},
      {zv({3, 0}), zv({0, 5}), zv({6, 10})},
      {zv({0, 0, 0}), zv({0, 2, 4})},
      {zv({12, 18}), zv({8, 4})},
  };
  for (const auto& a : cases) {
    std::size_t cols = a[0].size();
    auto hs = hermite_smith(a, cols);
    check_hermite(a, cols);
    Integer prod = 1;
    for (std::size_t k = 0; k < hs.divisors.size(); ++k) {
      prod *= hs.divisors[k];
      CHECK(prod == gcd_of_minors(a, cols, k + 1));
      if (k + 1 < hs.divisors.size()) CHECK(hs.divisors[k + 1] % hs.divisors[k] == 0);
    }
    CHECK(hs.divisors.size() == rank(a, cols));
  }
}

TEST_CASE("solve_linear examples") {
  auto s = solve_linear({qv({1, 0}), qv({0, 1})}, {q("3/2"), q("-1")}, 2);
  REQUIRE(s.feasible);
  CHECK(s.particular == RationalPoint{q("3/2"), q("-1")});
  CHECK(s.kernel.empty());

  auto t = solve_linear({qv({1, 1})}, qv({0}), 2);
  REQUIRE(t.feasible);
  CHECK(t.particular == qv({0, 0}));
  REQUIRE(t.kernel.size() == 1);
  CHECK(t.kernel[0][0] == -t.kernel[0][1]);
  CHECK(sgn(t.kernel[0][0]) != 0);

  CHECK_FALSE(solve_linear({qv({1}), qv({1})}, qv({0, 1}), 1).feasible);
}

TEST_CASE("integer kernel and saturation") {
  auto k = integer_kernel({zv({1, 1, 1})}, 3);
  CHECK(k.size() == 2);
  for (const auto& v : k) CHECK(v[0] + v[1] + v[2] == 0);
  // span of (2,0) saturates to (1,0)
  auto s = saturated_span({qv({2, 0})}, 2);
  CHECK(s == IntMatrix{zv({1, 0})});
}
