#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "unimodular/exact_poly.hpp"
#include "unimodular/random.hpp"

#include <algorithm>

using namespace ul;
using namespace ul::exact;

namespace {

using QPoly = std::vector<Rational>;

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

QPoly to_q(const IntPoly& p) {
    QPoly q;
    for (const auto& c : p) {
        q.emplace_back(c);
    }
    return q;
}

// plain Euclidean remainder over Q
QPoly qrem(QPoly a, const QPoly& b) {
    qtrim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[shift + i] -= f * b[i];
        }
        a.pop_back();
        qtrim(a);
    }
    return a;
}

QPoly qderiv(const QPoly& p) {
    QPoly d;
    for (std::size_t j = 1; j < p.size(); ++j) {
        d.push_back(p[j] * Rational(static_cast<long>(j)));
    }
    qtrim(d);
    return d;
}

Rational qeval(const QPoly& p, const Rational& x) {
    Rational v = 0;
    for (std::size_t j = p.size(); j-- > 0;) {
        v = v * x + p[j];
    }
    return v;
}

// textbook Sturm sequence p, p', -rem(...), ...
std::vector<QPoly> textbook_sturm(const QPoly& p) {
    std::vector<QPoly> s{p, qderiv(p)};
    while (!s.back().empty()) {
        QPoly r = qrem(s[s.size() - 2], s.back());
        for (auto& c : r) {
            c = -c;
        }
        if (r.empty()) {
            break;
        }
        s.push_back(r);
    }
    if (s.back().empty()) {
        s.pop_back();
    }
    return s;
}

int textbook_variations(const std::vector<QPoly>& s, const Rational& x) {
    int count = 0;
    int last = 0;
    for (const auto& p : s) {
        const int v = sgn(qeval(p, x));
        if (v == 0) {
            continue;
        }
        if (last != 0 && v != last) {
            ++count;
        }
        last = v;
    }
    return count;
}

// monic gcd over Q
QPoly qgcd(QPoly a, QPoly b) {
    qtrim(a);
    qtrim(b);
    while (!b.empty()) {
        QPoly r = qrem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Rational lc = a.back();
        for (auto& c : a) {
            c /= lc;
        }
    }
    return a;
}

QPoly qmonic(QPoly q) {
    const Rational lc = q.back();
    for (auto& c : q) {
        c /= lc;
    }
    return q;
}

QPoly monic(const IntPoly& p) {
    return qmonic(to_q(p));
}

IntPoly from_roots(const std::vector<std::pair<long, long>>& roots) {
    // product of (den x - num)
    IntPoly p{Integer(1)};
    for (const auto& [num, den] : roots) {
        p = multiply(p, IntPoly{Integer(-num), Integer(den)});
    }
    return p;
}

IntPoly random_poly(RngStream& rng, std::size_t deg, long bound) {
    IntPoly p(deg + 1);
    for (auto& c : p) {
        c = rng.between(-bound, bound);
    }
    if (p.back() == 0) {
        p.back() = 1;
    }
    return p;
}

} // namespace

TEST_CASE("basic helpers") {
    IntPoly p{Integer(2), Integer(4), Integer(0)};
    trim(p);
    CHECK(degree(p) == 1);
    CHECK(content(p) == 2);
    CHECK(primitive_part(p) == IntPoly{Integer(1), Integer(2)});
    CHECK(normalized(IntPoly{Integer(3), Integer(-6)}) == IntPoly{Integer(-1), Integer(2)});
    CHECK(degree(IntPoly{}) == -1);
    CHECK(derivative(IntPoly{Integer(5), Integer(3), Integer(2)}) == IntPoly{Integer(3), Integer(4)});
    CHECK(reversed(IntPoly{Integer(0), Integer(1), Integer(2)}) == IntPoly{Integer(2), Integer(1)});
    const std::vector<Rational> q{Rational(1, 2), Rational(-1, 3)};
    CHECK(from_rationals(q) == IntPoly{Integer(3), Integer(-2)});
}

TEST_CASE("divide_exact and pseudo_remainder") {
    const IntPoly a = from_roots({{1, 2}, {-3, 1}, {5, 7}});
    const IntPoly b = from_roots({{1, 2}});
    CHECK(normalized(multiply(divide_exact(a, b), b)) == normalized(a));
    CHECK_THROWS_AS(divide_exact(a, from_roots({{2, 1}})), std::logic_error);
    // pseudo-remainder agrees with the rational remainder up to a constant
    RngStream rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const IntPoly x = random_poly(rng, 2 + rng.below(8), 20);
        const IntPoly y = random_poly(rng, 1 + rng.below(static_cast<std::uint64_t>(degree(x))), 20);
        const IntPoly r = pseudo_remainder(x, y);
        const QPoly qr = qrem(to_q(x), to_q(y));
        if (r.empty()) {
            CHECK(qr.empty());
        } else {
            CHECK(monic(r) == qmonic(qr));
        }
    }
}

TEST_CASE("gcd agrees with the rational Euclid oracle") {
    RngStream rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const IntPoly common = random_poly(rng, rng.below(4), 9);
        const IntPoly a = multiply(common, random_poly(rng, rng.below(7), 9));
        const IntPoly b = multiply(common, random_poly(rng, rng.below(7), 9));
        const IntPoly g = gcd(a, b);
        const QPoly oracle = qgcd(to_q(a), to_q(b));
        REQUIRE(!g.empty());
        CHECK(monic(g) == oracle);
        CHECK(g.back() > 0);
    }
}

TEST_CASE("strip_unit_root") {
    IntPoly p = multiply(from_roots({{1, 1}, {1, 1}, {-1, 1}, {3, 2}}), IntPoly{Integer(1), Integer(0), Integer(1)});
    CHECK(strip_unit_root(p, false) == 2);
    CHECK(strip_unit_root(p, true) == 1);
    CHECK(strip_unit_root(p, false) == 0);
    CHECK(normalized(p) == normalized(multiply(from_roots({{3, 2}}), IntPoly{Integer(1), Integer(0), Integer(1)})));
}

TEST_CASE("sign_at matches rational evaluation") {
    RngStream rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const IntPoly p = random_poly(rng, rng.below(12), 50);
        Rational x(Integer(rng.between(-300, 300)), Integer(1) << static_cast<unsigned>(rng.below(40)));
        if (trial % 3 == 0) {
            x = Rational(Integer(rng.between(-50, 50)), Integer(rng.between(1, 97)));
        }
        x.canonicalize();
        CHECK(sign_at(p, x) == sgn(qeval(to_q(p), x)));
    }
    const IntPoly p = from_roots({{1, 3}, {-1, 1}, {1, 1}});
    CHECK(sign_at(p, Rational(1, 3)) == 0);
    CHECK(sign_at(p, Rational(-1)) == 0);
    CHECK(sign_at(p, Rational(1)) == 0);
}

TEST_CASE("Sturm chain matches the textbook sequence") {
    RngStream rng(41);
    for (int trial = 0; trial < 150; ++trial) {
        IntPoly p = random_poly(rng, 1 + rng.below(14), 12);
        if (trial % 4 == 0) {
            // plant rational roots, some repeated
            p = multiply(p, from_roots({{rng.between(-5, 5), rng.between(1, 4)}, {1, 2}, {1, 2}}));
        }
        const SturmChain chain(p);
        const auto oracle = textbook_sturm(to_q(p));
        for (int probe = 0; probe < 8; ++probe) {
            Rational x(Integer(rng.between(-400, 400)), Integer(rng.between(1, 64)));
            x.canonicalize();
            CHECK(chain.variations(x) == textbook_variations(oracle, x));
        }
        CHECK(monic(chain.gcd_with_derivative()) == qmonic(oracle.back()));
    }
}

TEST_CASE("Sturm counts planted roots") {
    const IntPoly p = from_roots({{-3, 4}, {1, 5}, {2, 3}, {7, 2}});
    const SturmChain chain(p);
    CHECK(chain.count_roots(Rational(-1), Rational(1)) == 3);
    CHECK(chain.count_roots(Rational(-10), Rational(10)) == 4);
    CHECK(chain.count_roots(Rational(0), Rational(1, 2)) == 1);
    // repeated roots count once
    const IntPoly q = from_roots({{1, 2}, {1, 2}, {1, 2}, {-1, 3}});
    CHECK(SturmChain(q).count_roots(Rational(-1), Rational(1)) == 2);
    // no real roots
    CHECK(SturmChain(IntPoly{Integer(1), Integer(0), Integer(1)}).count_roots(Rational(-100), Rational(100)) == 0);
}

TEST_CASE("square-free factors reconstruct the polynomial") {
    const IntPoly a1 = from_roots({{1, 3}});
    const IntPoly a2 = from_roots({{-2, 5}, {3, 1}});
    const IntPoly a3 = IntPoly{Integer(2), Integer(0), Integer(1)};
    const IntPoly p = multiply(multiply(a1, multiply(a2, a2)), multiply(a3, multiply(a3, a3)));
    const auto f = square_free_factors(p);
    REQUIRE(f.size() == 3);
    CHECK(normalized(f[0]) == normalized(a1));
    CHECK(normalized(f[1]) == normalized(a2));
    CHECK(normalized(f[2]) == normalized(a3));

    RngStream rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<IntPoly> parts;
        IntPoly prod{Integer(1)};
        for (std::size_t k = 1; k <= 3; ++k) {
            const IntPoly base = from_roots({{rng.between(-9, 9), rng.between(1, 5)}});
            for (std::size_t e = 0; e < k; ++e) {
                prod = multiply(prod, base);
            }
        }
        const auto fs = square_free_factors(prod);
        IntPoly back{Integer(1)};
        for (std::size_t k = 0; k < fs.size(); ++k) {
            for (std::size_t e = 0; e <= k; ++e) {
                back = multiply(back, fs[k]);
            }
        }
        CHECK(normalized(back) == normalized(prod));
    }
}
