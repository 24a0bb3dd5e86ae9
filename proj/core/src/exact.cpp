#include "toric/exact.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace toric {

RationalPoint to_rational(const LatticeVector& v) {
  RationalPoint out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
  return out;
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix out;
  out.reserve(a.size());
  for (const auto& row : a) out.push_back(to_rational(row));
  return out;
}

LatticeVector integral_direction(const RationalPoint& v) {
  Integer lcm = 1;
  for (const auto& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  LatticeVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational scaled = v[i] * Rational(lcm);
    out[i] = scaled.get_num();
  }
  return primitive(out);
}

Rational dot(const RationalPoint& a, const RationalPoint& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RationalPoint& a, const LatticeVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer dot(const LatticeVector& a, const LatticeVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RationalPoint add(const RationalPoint& a, const RationalPoint& b) {
  RationalPoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RationalPoint sub(const RationalPoint& a, const RationalPoint& b) {
  RationalPoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RationalPoint scale(const RationalPoint& a, const Rational& s) {
  RationalPoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

RationalPoint axpy(const RationalPoint& a, const Rational& s, const RationalPoint& b) {
  RationalPoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * b[i];
  return out;
}

bool is_zero(const RationalPoint& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool is_zero(const LatticeVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& z) { return sgn(z) == 0; });
}

Integer gcd_of(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

LatticeVector primitive(const LatticeVector& v) {
  Integer g = gcd_of(v);
  if (g == 0) throw InputError("zero vector has no primitive representative");
  LatticeVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const RationalPoint& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

std::string to_string(const LatticeVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

Rational parse_rational(const std::string& text) {
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw InputError("not a rational number: '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw InputError("zero denominator in '" + text + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> rref(RatMatrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rational inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::size_t rank(const RatMatrix& a, std::size_t cols) {
  RatMatrix copy = a;
  return rref(copy, cols).size();
}

std::size_t rank(const IntMatrix& a, std::size_t cols) { return rank(to_rational(a), cols); }

RatMatrix kernel(const RatMatrix& a, std::size_t cols) {
  RatMatrix r = a;
  auto pivots = rref(r, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  RatMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalPoint v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational determinant(RatMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

RatMatrix transpose(const RatMatrix& a, std::size_t cols) {
  RatMatrix t(cols, RationalPoint(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

IntMatrix transpose(const IntMatrix& a, std::size_t cols) {
  IntMatrix t(cols, LatticeVector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

RationalPoint mat_vec(const RatMatrix& a, const RationalPoint& x) {
  RationalPoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], x);
  return out;
}

LatticeVector mat_vec(const IntMatrix& a, const LatticeVector& x) {
  LatticeVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], x);
  return out;
}

LinearSolution solve_linear(const RatMatrix& a, const RationalPoint& b, std::size_t cols) {
  RatMatrix aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    RationalPoint row = a[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  auto pivots = rref(aug, cols + 1);
  LinearSolution sol;
  if (!pivots.empty() && pivots.back() == cols) return sol;  // 0 = 1 row
  sol.feasible = true;
  sol.particular.assign(cols, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) sol.particular[pivots[i]] = aug[i][cols];
  sol.kernel = kernel(a, cols);
  return sol;
}

std::optional<RationalPoint> solve_square(const RatMatrix& a, const RationalPoint& b) {
  auto sol = solve_linear(a, b, a.size());
  if (!sol.feasible || !sol.kernel.empty()) return std::nullopt;
  return sol.particular;
}

// ---------------------------------------------------------------------------

namespace {

// floor division for the reduction step of the Hermite form
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void row_sub(LatticeVector& target, const LatticeVector& source, const Integer& f) {
  for (std::size_t k = 0; k < target.size(); ++k) target[k] -= f * source[k];
}

LatticeVector smith_divisors(IntMatrix a, std::size_t cols) {
  const std::size_t rows = a.size();
  LatticeVector out;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero entry of the trailing block
    bool found = false;
    std::size_t pr = 0, pc = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (sgn(a[i][j]) != 0 && (!found || abs(a[i][j]) < abs(a[pr][pc]))) {
          found = true;
          pr = i;
          pc = j;
        }
    if (!found) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      Integer q = floor_div(a[i][t], a[t][t]);
      row_sub(a[i], a[t], q);
      if (sgn(a[i][t]) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      Integer q = floor_div(a[t][j], a[t][t]);
      for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
      if (sgn(a[t][j]) != 0) clean = false;
    }
    if (!clean) continue;
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i)
      for (std::size_t j = t + 1; j < cols; ++j)
        if (sgn(a[i][j]) != 0 && a[i][j] % a[t][t] != 0) {
          for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
          divides = false;
          break;
        }
    if (!divides) continue;
    out.push_back(abs(a[t][t]));
    ++t;
  }
  return out;
}

}  // namespace

HermiteSmith hermite_smith(const IntMatrix& a, std::size_t cols) {
  const std::size_t rows = a.size();
  HermiteSmith res;
  res.hermite = a;
  res.transform = identity_matrix(rows);
  auto& h = res.hermite;
  auto& u = res.transform;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    // Euclid on column c below `row`
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = row; i < rows; ++i)
        if (sgn(h[i][c]) != 0 && (best == rows || abs(h[i][c]) < abs(h[best][c]))) best = i;
      if (best == rows) break;
      std::swap(h[row], h[best]);
      std::swap(u[row], u[best]);
      bool done = true;
      for (std::size_t i = row + 1; i < rows; ++i) {
        if (sgn(h[i][c]) == 0) continue;
        Integer q = floor_div(h[i][c], h[row][c]);
        row_sub(h[i], h[row], q);
        row_sub(u[i], u[row], q);
        if (sgn(h[i][c]) != 0) done = false;
      }
      if (done) break;
    }
    if (sgn(h[row][c]) == 0) continue;
    if (sgn(h[row][c]) < 0) {
      for (auto& x : h[row]) x = -x;
      for (auto& x : u[row]) x = -x;
    }
    for (std::size_t i = 0; i < row; ++i) {
      Integer q = floor_div(h[i][c], h[row][c]);
      if (q == 0) continue;
      row_sub(h[i], h[row], q);
      row_sub(u[i], u[row], q);
    }
    ++row;
  }
  res.divisors = smith_divisors(a, cols);
  return res;
}

IntMatrix hermite_basis(const IntMatrix& rows, std::size_t cols) {
  auto hs = hermite_smith(rows, cols);
  IntMatrix out;
  for (auto& r : hs.hermite)
    if (!is_zero(r)) out.push_back(r);
  return out;
}

IntMatrix integer_kernel(const IntMatrix& a, std::size_t cols) {
  if (a.empty()) return identity_matrix(cols);
  // U * A^T = H; rows of U against zero rows of H span the integer kernel.
  auto hs = hermite_smith(transpose(a, cols), a.size());
  IntMatrix basis;
  for (std::size_t i = 0; i < hs.hermite.size(); ++i)
    if (is_zero(hs.hermite[i])) basis.push_back(hs.transform[i]);
  if (basis.empty()) return basis;
  return hermite_basis(basis, cols);
}

IntMatrix saturated_span(const RatMatrix& vectors, std::size_t cols) {
  RatMatrix perp = kernel(vectors, cols);  // rows spanning span(vectors)^perp
  IntMatrix perp_int;
  for (const auto& r : perp) perp_int.push_back(integral_direction(r));
  return integer_kernel(perp_int, cols);
}

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix id(n, LatticeVector(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

}  // namespace toric
