#pragma once

#include "unimodular/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

// Dense univariate polynomials over Z, ascending powers, no trailing zeros
// (the zero polynomial is the empty vector). Everything here is exact; the
// routines treat polynomials up to a nonzero rational factor unless noted.
namespace ul::exact {

using IntPoly = std::vector<Integer>;

void trim(IntPoly& p);
/// -1 for the zero polynomial.
int degree(const IntPoly& p);
const Integer& leading(const IntPoly& p);

/// Nonnegative gcd of the coefficients.
Integer content(const IntPoly& p);
/// Divides by the positive content; the sign of every coefficient is kept.
IntPoly primitive_part(IntPoly p);
/// Primitive part scaled so the leading coefficient is positive.
IntPoly normalized(IntPoly p);

/// Clears denominators with their positive lcm and returns the primitive part.
/// Positive scaling, so signs of values are preserved.
IntPoly from_rationals(std::span<const Rational> a);

IntPoly derivative(const IntPoly& p);
IntPoly reversed(const IntPoly& p);
IntPoly negated(IntPoly p);
IntPoly multiply(const IntPoly& a, const IntPoly& b);

/// lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

/// Quotient a / b when b divides a over Q, returned as a normalized primitive
/// polynomial. Throws std::logic_error if the division is not exact.
IntPoly divide_exact(const IntPoly& a, const IntPoly& b);

/// Greatest common divisor over Q via the subresultant remainder sequence,
/// normalized. gcd(0, 0) is the zero polynomial.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

/// Multiplicity of the root x = 1 (or x = -1 with `at_minus_one`), dividing it
/// out of `p` in place by synthetic division.
std::size_t strip_unit_root(IntPoly& p, bool at_minus_one);

/// Exact sign of p(x).
int sign_at(const IntPoly& p, const Rational& x);

/// Signed remainder sequence p, p', -rem(p, p'), ... computed with the
/// subresultant recurrence. The stored polynomials differ from the textbook
/// Sturm sequence by positive or negative constants; `signs()` holds those
/// signs so variations are counted on the true sequence.
class SturmChain {
public:
    explicit SturmChain(const IntPoly& p);

    /// Sign variations at x, zeros skipped.
    int variations(const Rational& x) const;
    /// Number of distinct real roots in (a, b]; valid for p(a) != 0.
    int count_roots(const Rational& a, const Rational& b) const;

    /// Last nonzero element, normalized: gcd(p, p') up to a constant.
    IntPoly gcd_with_derivative() const;

    std::size_t length() const noexcept { return polys_.size(); }
    const std::vector<IntPoly>& polys() const noexcept { return polys_; }
    const std::vector<int>& signs() const noexcept { return signs_; }

private:
    std::vector<IntPoly> polys_;
    std::vector<int> signs_;
};

/// Square-free factors A_1, A_2, ... with p = c * prod A_k^k, obtained from the
/// chain of repeated gcds with derivatives. Factors are normalized; A_k is the
/// constant 1 when p has no root of multiplicity exactly k. The first gcd can
/// be supplied when it is already known.
std::vector<IntPoly> square_free_factors(const IntPoly& p, const IntPoly* known_gcd_with_derivative = nullptr);

} // namespace ul::exact
