#include "unimodular/transforms.hpp"

#include "unimodular/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ul {

ChebyshevForm::ChebyshevForm(std::vector<Rational> f) : f_(std::move(f)) {
    if (f_.empty()) {
        throw RangeError("Chebyshev form needs at least one coefficient");
    }
}

Rational ChebyshevForm::operator()(const Rational& x) const {
    Rational v = 0;
    for (std::size_t j = f_.size(); j-- > 0;) {
        v = v * x + f_[j];
    }
    return v;
}

double ChebyshevForm::operator()(double x) const {
    double v = 0.0;
    for (std::size_t j = f_.size(); j-- > 0;) {
        v = v * x + f_[j].get_d();
    }
    return v;
}

CosinePolynomial self_reciprocal_to_cosine(const Coefficients& p) {
    const std::size_t deg = p.declared_degree();
    if (deg % 2 != 0) {
        throw StructureError("self_reciprocal_to_cosine needs even degree, got " + std::to_string(deg));
    }
    if (!is_self_reciprocal(p)) {
        throw StructureError("self_reciprocal_to_cosine needs a self-reciprocal polynomial");
    }
    const std::size_t n = deg / 2;
    std::vector<Rational> c(n + 1);
    c[0] = p[n];
    for (std::size_t j = 1; j <= n; ++j) {
        c[j] = 2 * p[n + j];
    }
    return CosinePolynomial(std::move(c));
}

Coefficients lift_odd_degree(const Coefficients& p) {
    const std::size_t deg = p.declared_degree();
    if (deg % 2 == 0) {
        throw StructureError("lift_odd_degree needs odd degree, got " + std::to_string(deg));
    }
    if (!is_self_reciprocal(p)) {
        throw StructureError("lift_odd_degree needs a self-reciprocal polynomial");
    }
    std::vector<Rational> out(deg + 2);
    for (std::size_t j = 0; j <= deg; ++j) {
        out[j] += p[j];
        out[j + 1] += p[j];
    }
    return Coefficients(std::move(out));
}

ChebyshevForm cosine_to_chebyshev(const CosinePolynomial& c) {
    const std::size_t n = c.degree();
    std::vector<Rational> f(n + 1);
    // integer Chebyshev polynomials, two at a time
    std::vector<Integer> prev{Integer(1)};
    std::vector<Integer> cur{Integer(0), Integer(1)};
    f[0] += c[0];
    if (n >= 1) {
        f[1] += c[1];
    }
    for (std::size_t j = 2; j <= n; ++j) {
        std::vector<Integer> next(j + 1);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            next[i + 1] += 2 * cur[i];
        }
        for (std::size_t i = 0; i < prev.size(); ++i) {
            next[i] -= prev[i];
        }
        if (c[j] != 0) {
            for (std::size_t i = 0; i <= j; ++i) {
                if (next[i] != 0) {
                    f[i] += c[j] * next[i];
                }
            }
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    return ChebyshevForm(std::move(f));
}

CosinePolynomial chebyshev_to_cosine(std::span<const Rational> monomial) {
    if (monomial.empty()) {
        throw RangeError("chebyshev_to_cosine needs at least one coefficient");
    }
    // Horner in the Chebyshev basis: x Ch_0 = Ch_1, x Ch_k = (Ch_{k+1} + Ch_{k-1}) / 2
    const std::size_t n = monomial.size() - 1;
    std::vector<Rational> acc(n + 1);
    acc[0] = monomial[n];
    std::size_t top = 0;
    for (std::size_t j = n; j-- > 0;) {
        std::vector<Rational> shifted(n + 1);
        for (std::size_t k = 0; k <= top; ++k) {
            if (acc[k] == 0) {
                continue;
            }
            if (k == 0) {
                shifted[1] += acc[0];
            } else {
                const Rational half = acc[k] / 2;
                shifted[k + 1] += half;
                shifted[k - 1] += half;
            }
        }
        shifted[0] += monomial[j];
        acc = std::move(shifted);
        top = std::min(top + 1, n);
    }
    return CosinePolynomial(std::move(acc));
}

double eval_chebyshev_series(std::span<const double> c, double x) {
    double b1 = 0.0;
    double b2 = 0.0;
    for (std::size_t j = c.size(); j-- > 1;) {
        const double b0 = c[j] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return c.empty() ? 0.0 : c[0] + x * b1 - b2;
}

double eval_cosine(std::span<const double> c, double t) { return eval_chebyshev_series(c, std::cos(t)); }

double eval_cosine(const CosinePolynomial& c, double t) {
    const auto d = c.to_doubles();
    return eval_cosine(d, t);
}

std::complex<double> eval_unit_circle(const Coefficients& p, double t) {
    const std::complex<double> z = std::polar(1.0, t);
    std::complex<double> v = 0.0;
    const auto a = p.values();
    for (std::size_t j = a.size(); j-- > 0;) {
        v = v * z + a[j].get_d();
    }
    return v;
}

Coefficients reciprocal_adjoint(const Coefficients& p) {
    const auto a = p.values();
    return Coefficients(std::vector<Rational>(a.rbegin(), a.rend()));
}

} // namespace ul
