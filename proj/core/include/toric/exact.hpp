#pragma once

// Exact integer / rational linear algebra. Everything in the engine is built
// on these helpers; there is no floating point anywhere in the core.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

using Integer = mpz_class;
using Rational = mpq_class;

/// A point of a lattice (N or M); entries are arbitrary-precision integers.
using LatticeVector = std::vector<Integer>;
/// A point of a rational vector space (M_Q, V(Z), slice coordinates).
using RationalPoint = std::vector<Rational>;

using IntMatrix = std::vector<LatticeVector>;   // row-major
using RatMatrix = std::vector<RationalPoint>;   // row-major

/// Base class of every error the engine raises.
class ToricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or mathematically invalid input.
class InputError : public ToricError {
 public:
  using ToricError::ToricError;
};

/// Internal inconsistency or resource cap (iteration limit, failed self-check).
class EngineError : public ToricError {
 public:
  using ToricError::ToricError;
};

// ---------------------------------------------------------------------------
// Conversions and small vector helpers.

RationalPoint to_rational(const LatticeVector& v);
RatMatrix to_rational(const IntMatrix& a);

/// Scales a nonzero rational vector to the primitive integer vector with the
/// same direction (positive multiple).
LatticeVector integral_direction(const RationalPoint& v);

Rational dot(const RationalPoint& a, const RationalPoint& b);
Rational dot(const RationalPoint& a, const LatticeVector& b);
Integer dot(const LatticeVector& a, const LatticeVector& b);

RationalPoint add(const RationalPoint& a, const RationalPoint& b);
RationalPoint sub(const RationalPoint& a, const RationalPoint& b);
RationalPoint scale(const RationalPoint& a, const Rational& s);
/// a + s * b
RationalPoint axpy(const RationalPoint& a, const Rational& s, const RationalPoint& b);

bool is_zero(const RationalPoint& v);
bool is_zero(const LatticeVector& v);

Integer gcd_of(const LatticeVector& v);

/// Divides v by the gcd of its entries. Throws InputError on the zero vector.
LatticeVector primitive(const LatticeVector& v);

std::string to_string(const Rational& q);
std::string to_string(const RationalPoint& v);
std::string to_string(const LatticeVector& v);
/// Parses "p", "-p" or "p/q". Throws InputError.
Rational parse_rational(const std::string& text);

// ---------------------------------------------------------------------------
// Rational linear algebra.

/// Reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a, std::size_t cols);

std::size_t rank(const RatMatrix& a, std::size_t cols);
std::size_t rank(const IntMatrix& a, std::size_t cols);

/// Basis of {x : A x = 0}, one basis vector per free column of the RREF.
RatMatrix kernel(const RatMatrix& a, std::size_t cols);

Rational determinant(RatMatrix a);

RatMatrix transpose(const RatMatrix& a, std::size_t cols);
IntMatrix transpose(const IntMatrix& a, std::size_t cols);

RationalPoint mat_vec(const RatMatrix& a, const RationalPoint& x);
LatticeVector mat_vec(const IntMatrix& a, const LatticeVector& x);

struct LinearSolution {
  bool feasible = false;
  RationalPoint particular;  // empty when infeasible
  RatMatrix kernel;          // basis of the solution space's direction
};

/// Solves A x = b exactly. `cols` is the number of unknowns.
LinearSolution solve_linear(const RatMatrix& a, const RationalPoint& b, std::size_t cols);

/// Unique solution of a square nonsingular system, nullopt when singular.
std::optional<RationalPoint> solve_square(const RatMatrix& a, const RationalPoint& b);

// ---------------------------------------------------------------------------
// Integer normal forms and lattices.

struct HermiteSmith {
  IntMatrix hermite;      // U * A, row Hermite normal form
  IntMatrix transform;    // U, unimodular
  LatticeVector divisors; // nonzero elementary divisors d_1 | d_2 | ...
};

HermiteSmith hermite_smith(const IntMatrix& a, std::size_t cols);

/// Row Hermite normal form with zero rows dropped; canonical for the row lattice.
IntMatrix hermite_basis(const IntMatrix& rows, std::size_t cols);

/// Basis (rows, canonical HNF) of the lattice {x in Z^cols : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a, std::size_t cols);

/// Basis (rows, canonical HNF) of span(vectors) intersected with Z^cols.
IntMatrix saturated_span(const RatMatrix& vectors, std::size_t cols);

IntMatrix identity_matrix(std::size_t n);

}  // namespace toric
