#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "betauto/bignum.hpp"
#include "betauto/interval.hpp"

namespace betauto {

/// Integer polynomial, coefficients from the constant term upward.
using IntPoly = std::vector<BigInt>;
/// Rational polynomial, coefficients from the constant term upward.
using RatPoly = std::vector<Rational>;

void trim(IntPoly& p);
void trim(RatPoly& p);

/// Degree of a trimmed polynomial; -1 for the zero polynomial.
[[nodiscard]] int degree(IntPoly const& p);
[[nodiscard]] int degree(RatPoly const& p);

[[nodiscard]] IntPoly make_int_poly(std::vector<long long> const& coeffs);
[[nodiscard]] RatPoly to_rational(IntPoly const& p);
[[nodiscard]] IntPoly derivative(IntPoly const& p);
[[nodiscard]] IntPoly reversed(IntPoly const& p);

/// Monic gcd over Q.
[[nodiscard]] RatPoly gcd(RatPoly a, RatPoly b);

/// Quotient and remainder over Q; divisor must be nonzero.
struct RatDivision {
  RatPoly quotient;
  RatPoly remainder;
};
[[nodiscard]] RatDivision divide(RatPoly const& a, RatPoly const& b);

/// True when `divisor` divides `p` exactly in Q[x].
[[nodiscard]] bool divides(IntPoly const& divisor, IntPoly const& p);

/// Palindromic or anti-palindromic coefficient sequence.
[[nodiscard]] bool is_self_reciprocal(IntPoly const& p);

[[nodiscard]] Interval evaluate(IntPoly const& p, Interval const& x);
[[nodiscard]] ComplexInterval evaluate(IntPoly const& p, ComplexInterval const& z);

/// Human-readable form in descending powers, e.g. "x^2-3x+1".
[[nodiscard]] std::string to_string(IntPoly const& p, std::string_view var = "x");
[[nodiscard]] std::string to_string(RatPoly const& p, std::string_view var = "x");

}  // namespace betauto
