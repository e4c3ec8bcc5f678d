#pragma once

#include "unimodular/poly_core.hpp"

#include <complex>
#include <span>
#include <vector>

namespace ul {

/// F(x) = sum f_j x^j with x = cos t, exact monomial coefficients.
class ChebyshevForm {
public:
    ChebyshevForm() : f_(1) {}
    explicit ChebyshevForm(std::vector<Rational> f);

    std::size_t degree() const noexcept { return f_.size() - 1; }
    std::span<const Rational> values() const noexcept { return f_; }
    const Rational& operator[](std::size_t j) const { return f_[j]; }

    Rational operator()(const Rational& x) const;
    double operator()(double x) const;

    friend bool operator==(const ChebyshevForm&, const ChebyshevForm&) = default;

private:
    std::vector<Rational> f_;
};

/// Cosine degrees above this route to the floating pipeline.
inline constexpr std::size_t kExactDegreeCap = 4096;

/// c_0 = a_n, c_j = 2 a_{n+j} for a self-reciprocal p of declared degree 2n,
/// so that P(e^{it}) e^{-int} = sum c_j cos(jt). Throws StructureError otherwise.
CosinePolynomial self_reciprocal_to_cosine(const Coefficients& p);

/// (z + 1) P(z) for a self-reciprocal p of odd declared degree.
Coefficients lift_odd_degree(const Coefficients& p);

/// Expands sum c_j Ch_j(x) with Ch_{j+1} = 2x Ch_j - Ch_{j-1}.
ChebyshevForm cosine_to_chebyshev(const CosinePolynomial& c);

/// Inverse of cosine_to_chebyshev: sum f_j x^j rewritten in the Chebyshev basis.
CosinePolynomial chebyshev_to_cosine(std::span<const Rational> monomial);

/// Clenshaw evaluation of sum c_j cos(j t).
double eval_cosine(std::span<const double> c, double t);
double eval_cosine(const CosinePolynomial& c, double t);

/// Clenshaw evaluation of sum c_j Ch_j(x) for x in [-1, 1].
double eval_chebyshev_series(std::span<const double> c, double x);

/// P(e^{it}) by Horner.
std::complex<double> eval_unit_circle(const Coefficients& p, double t);

/// z^n P(1/z) at the declared degree n.
Coefficients reciprocal_adjoint(const Coefficients& p);

} // namespace ul
