#include "unimodular/exact_poly.hpp"

#include "unimodular/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ul::exact {

namespace {

Integer power(const Integer& base, std::size_t e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return out;
}

void divexact_in_place(IntPoly& p, const Integer& d) {
    if (d == 1) {
        return;
    }
    for (auto& c : p) {
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    }
}

// Pseudo-division lc(b)^(deg a - deg b + 1) a = q b + r. `q` may be null.
IntPoly pseudo_divide(const IntPoly& a, const IntPoly& b, IntPoly* q) {
    const int db = degree(b);
    if (db < 0) {
        throw std::domain_error("pseudo-division by the zero polynomial");
    }
    IntPoly r = a;
    int dr = degree(r);
    if (q != nullptr) {
        q->assign(dr >= db ? static_cast<std::size_t>(dr - db + 1) : 0, Integer(0));
    }
    if (dr < db) {
        return r;
    }
    const Integer& lcb = b.back();
    const bool unit = (lcb == 1);
    int e = dr - db + 1;
    Integer s;
    Integer tmp;
    while (dr >= db) {
        const auto k = static_cast<std::size_t>(dr - db);
        s = r[static_cast<std::size_t>(dr)];
        if (!unit) {
            for (int i = 0; i < dr; ++i) {
                r[static_cast<std::size_t>(i)] *= lcb;
            }
            if (q != nullptr) {
                for (auto& c : *q) {
                    c *= lcb;
                }
            }
        }
        if (q != nullptr) {
            (*q)[k] += s;
        }
        for (int i = 0; i < db; ++i) {
            tmp = s * b[static_cast<std::size_t>(i)];
            r[k + static_cast<std::size_t>(i)] -= tmp;
        }
        r[static_cast<std::size_t>(dr)] = 0;
        trim(r);
        dr = degree(r);
        --e;
    }
    if (e > 0 && !unit) {
        const Integer f = power(lcb, static_cast<std::size_t>(e));
        for (auto& c : r) {
            c *= f;
        }
        if (q != nullptr) {
            for (auto& c : *q) {
                c *= f;
            }
        }
    }
    return r;
}

// Subresultant remainder sequence starting from (a, b), deg a >= deg b >= 0.
// `emit(r, lc_ratio_sign)` receives each new remainder together with the sign
// of lc(cur)^(delta+1) / beta, which relates it to the signed Euclidean remainder.
template <class Emit>
void subresultant_sequence(IntPoly a, IntPoly b, Emit&& emit) {
    IntPoly prev = std::move(a);
    IntPoly cur = std::move(b);
    int delta = degree(prev) - degree(cur);
    Integer beta = (delta % 2 == 0) ? -1 : 1; // (-1)^(delta+1)
    Integer psi = -1;
    while (degree(cur) > 0) {
        IntPoly next = pseudo_remainder(prev, cur);
        if (next.empty()) {
            break;
        }
        divexact_in_place(next, beta);
        const int lc_sign = sgn(cur.back());
        const int scale_sign = ((delta + 1) % 2 == 0 ? 1 : lc_sign) * sgn(beta);
        emit(next, scale_sign);

        const Integer minus_lc = -cur.back();
        if (delta == 1) {
            psi = minus_lc;
        } else if (delta > 1) {
            Integer num = power(minus_lc, static_cast<std::size_t>(delta));
            const Integer den = power(psi, static_cast<std::size_t>(delta - 1));
            mpz_divexact(psi.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        prev = std::move(cur);
        cur = std::move(next);
        delta = degree(prev) - degree(cur);
        beta = -prev.back() * power(psi, static_cast<std::size_t>(delta));
    }
}

} // namespace

void trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

const Integer& leading(const IntPoly& p) {
    if (p.empty()) {
        throw std::domain_error("leading coefficient of the zero polynomial");
    }
    return p.back();
}

Integer content(const IntPoly& p) {
    Integer g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) {
            break;
        }
    }
    return g;
}

IntPoly primitive_part(IntPoly p) {
    trim(p);
    if (p.empty()) {
        return p;
    }
    divexact_in_place(p, content(p));
    return p;
}

IntPoly normalized(IntPoly p) {
    p = primitive_part(std::move(p));
    if (!p.empty() && p.back() < 0) {
        p = negated(std::move(p));
    }
    return p;
}

IntPoly from_rationals(std::span<const Rational> a) {
    Integer l = 1;
    for (const auto& q : a) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    }
    IntPoly p;
    p.reserve(a.size());
    for (const auto& q : a) {
        p.push_back(q.get_num() * (l / q.get_den()));
    }
    return primitive_part(std::move(p));
}

IntPoly derivative(const IntPoly& p) {
    if (p.size() <= 1) {
        return {};
    }
    IntPoly d(p.size() - 1);
    for (std::size_t j = 1; j < p.size(); ++j) {
        d[j - 1] = p[j] * static_cast<unsigned long>(j);
    }
    trim(d);
    return d;
}

IntPoly reversed(const IntPoly& p) {
    IntPoly r(p.rbegin(), p.rend());
    trim(r);
    return r;
}

IntPoly negated(IntPoly p) {
    for (auto& c : p) {
        c = -c;
    }
    return p;
}

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) {
        return {};
    }
    IntPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    trim(out);
    return out;
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) { return pseudo_divide(a, b, nullptr); }

IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
    IntPoly q;
    const IntPoly r = pseudo_divide(a, b, &q);
    if (!r.empty()) {
        throw std::logic_error("divide_exact: divisor does not divide dividend");
    }
    trim(q);
    return normalized(std::move(q));
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    IntPoly pa = primitive_part(a);
    IntPoly pb = primitive_part(b);
    if (pa.empty()) {
        return normalized(std::move(pb));
    }
    if (pb.empty()) {
        return normalized(std::move(pa));
    }
    if (degree(pa) < degree(pb)) {
        std::swap(pa, pb);
    }
    IntPoly last = pb;
    subresultant_sequence(std::move(pa), std::move(pb), [&](const IntPoly& r, int) { last = r; });
    return normalized(std::move(last));
}

std::size_t strip_unit_root(IntPoly& p, bool at_minus_one) {
    std::size_t m = 0;
    while (p.size() >= 2) {
        // synthetic division by (x - r), r = +-1
        IntPoly q(p.size() - 1);
        Integer acc = 0;
        for (std::size_t j = p.size(); j-- > 1;) {
            acc = at_minus_one ? Integer(p[j] - acc) : Integer(p[j] + acc);
            q[j - 1] = acc;
        }
        const Integer rem = at_minus_one ? Integer(p[0] - acc) : Integer(p[0] + acc);
        if (rem != 0) {
            break;
        }
        p = std::move(q);
        ++m;
    }
    return m;
}

int sign_at(const IntPoly& p, const Rational& x) {
    if (p.empty()) {
        return 0;
    }
    const Integer& a = x.get_num();
    const Integer& b = x.get_den();
    if (a == 0) {
        return sgn(p.front());
    }
    if (b == 1 && (a == 1 || a == -1)) {
        Integer s = 0;
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (a == -1 && (j % 2 == 1)) {
                s -= p[j];
            } else {
                s += p[j];
            }
        }
        return sgn(s);
    }
    // sum p_j a^j b^(d-j) by Horner; b > 0 so the sign is that of p(x)
    const bool dyadic = mpz_popcount(b.get_mpz_t()) == 1;
    const auto shift = dyadic ? mpz_sizeinbase(b.get_mpz_t(), 2) - 1 : 0;
    Integer v = p.back();
    Integer bp = 1;
    Integer term;
    for (std::size_t j = p.size() - 1; j-- > 0;) {
        v *= a;
        if (p[j] == 0) {
            if (!dyadic) {
                bp *= b;
            }
            continue;
        }
        if (dyadic) {
            mpz_mul_2exp(term.get_mpz_t(), p[j].get_mpz_t(), shift * (p.size() - 1 - j));
        } else {
            bp *= b;
            term = p[j] * bp;
        }
        v += term;
    }
    return sgn(v);
}

// ------------------------------------------------------------ SturmChain

SturmChain::SturmChain(const IntPoly& p) {
    IntPoly p0 = primitive_part(p);
    if (p0.empty()) {
        throw DegenerateInputError("Sturm chain of the zero polynomial");
    }
    polys_.push_back(p0);
    signs_.push_back(1);
    IntPoly d = derivative(p0);
    if (d.empty()) {
        return;
    }
    polys_.push_back(d);
    signs_.push_back(1);
    subresultant_sequence(p0, d, [&](const IntPoly& r, int scale_sign) {
        const int sigma_prev = signs_[signs_.size() - 2];
        polys_.push_back(r);
        signs_.push_back(-sigma_prev * scale_sign);
    });
}

int SturmChain::variations(const Rational& x) const {
    int count = 0;
    int last = 0;
    for (std::size_t i = 0; i < polys_.size(); ++i) {
        const int s = signs_[i] * sign_at(polys_[i], x);
        if (s == 0) {
            continue;
        }
        if (last != 0 && s != last) {
            ++count;
        }
        last = s;
    }
    return count;
}

int SturmChain::count_roots(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

IntPoly SturmChain::gcd_with_derivative() const { return normalized(polys_.back()); }

std::vector<IntPoly> square_free_factors(const IntPoly& p, const IntPoly* known_gcd_with_derivative) {
    IntPoly g0 = normalized(p);
    if (g0.empty()) {
        throw DegenerateInputError("square-free factorization of the zero polynomial");
    }
    std::vector<IntPoly> gs{g0};
    gs.push_back(known_gcd_with_derivative != nullptr ? normalized(*known_gcd_with_derivative)
                                                      : gcd(g0, derivative(g0)));
    while (degree(gs.back()) > 0) {
        gs.push_back(gcd(gs.back(), derivative(gs.back())));
    }
    // gs = G_0 = p, G_1, ..., G_L with deg G_L = 0
    std::vector<IntPoly> s;
    for (std::size_t k = 1; k < gs.size(); ++k) {
        s.push_back(divide_exact(gs[k - 1], gs[k]));
    }
    std::vector<IntPoly> a;
    for (std::size_t k = 0; k < s.size(); ++k) {
        a.push_back(k + 1 < s.size() ? divide_exact(s[k], s[k + 1]) : s[k]);
    }
    return a;
}

} // namespace ul::exact
