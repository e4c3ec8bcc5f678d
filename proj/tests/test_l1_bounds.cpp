#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "unimodular/errors.hpp"
#include "unimodular/l1_bounds.hpp"
#include "unimodular/random.hpp"
#include "unimodular/transforms.hpp"

#include <cmath>
#include <numbers>

using namespace ul;
using std::numbers::pi;

namespace {

// composite Simpson on `panels` (even) panels
template <class F>
double simpson(F f, double a, double b, std::size_t panels) {
    const double h = (b - a) / static_cast<double>(panels);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < panels; ++i) {
        s += f(a + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

CosineSparse sparse(std::initializer_list<std::pair<std::uint64_t, double>> terms) {
    std::vector<CosineTerm> v;
    for (const auto& [f, a] : terms) {
        v.push_back({f, a});
    }
    return CosineSparse(std::move(v));
}

} // namespace

TEST_CASE("CosineSparse construction") {
    CHECK_THROWS_AS(sparse({{2, 1.0}, {1, 1.0}}), DomainError);
    CHECK_THROWS_AS(sparse({{1, 1.0}, {1, 2.0}}), DomainError);
    CHECK_THROWS_AS(sparse({{1, std::nan("")}}), DomainError);
    const CosineSparse q = sparse({{0, 0.0}, {3, 2.0}});
    CHECK(q.terms().size() == 1);
    CHECK(q.max_frequency() == 3);
    CHECK(q(0.0) == doctest::Approx(2.0));
    CHECK(CosineSparse::from(CosinePolynomial{1, 0, -2}).terms().size() == 2);
}

TEST_CASE("adaptive Gauss-Legendre") {
    const QuadratureResult r = adaptive_gauss_legendre([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(r.value - (std::exp(1.0) - 1.0)) < 1e-12);
    CHECK(r.error_bound <= 1e-12);
    const QuadratureResult s = adaptive_gauss_legendre([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10);
    CHECK(std::abs(s.value - 2.0 / 3.0) < 1e-9);
    CHECK(s.subintervals > 1);
}

TEST_CASE("l1_norm examples") {
    const QuadratureResult c = l1_norm(CosinePolynomial{0, 1});
    CHECK(std::abs(c.value - 4.0) < 1e-9);
    CHECK(c.error_bound <= 1e-8);
    CHECK(std::abs(l1_norm(CosinePolynomial{1}).value - 2 * pi) < 1e-9);
    const auto f = [](double t) { return std::abs(1 + 2 * std::cos(t)); };
    const double oracle = simpson(f, -pi, pi, 1000000);
    CHECK(std::abs(l1_norm(CosinePolynomial{1, 2}).value - oracle) < 1e-8);
    // closed form 4 sqrt(3) + 2 pi / 3
    CHECK(std::abs(l1_norm(CosinePolynomial{1, 2}).value - (4 * std::sqrt(3.0) + 2 * pi / 3)) < 1e-9);
    CHECK_THROWS_AS(l1_norm(CosinePolynomial{0, 0}), DegenerateInputError);
    CHECK_THROWS_AS(l1_norm(CosineSparse{}), DegenerateInputError);
}

TEST_CASE("l1_norm properties") {
    for (std::uint64_t i = 0; i < 20; ++i) {
        const CosineSparse a = random_cosine_sparse(7, i, 8, 40);
        const CosineSparse b = random_cosine_sparse(7, i + 1000, 8, 40);
        // |int T| <= int |T|, int T = 2 pi A_0
        double mean = 0;
        for (const auto& t : a.terms()) {
            if (t.frequency == 0) {
                mean = t.amplitude;
            }
        }
        const double la = l1_norm(a).value;
        CHECK(la + 1e-9 >= 2 * pi * std::abs(mean));
        const double oracle = simpson([&](double t) { return std::abs(a(t)); }, -pi, pi, 200000);
        CHECK(std::abs(la - oracle) < 1e-4);
        // triangle inequality on the dense sum
        CosinePolynomial da = a.to_cosine_polynomial();
        CosinePolynomial db = b.to_cosine_polynomial();
        std::vector<Rational> s(std::max(da.size(), db.size()));
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (j < da.size()) {
                s[j] += da[j];
            }
            if (j < db.size()) {
                s[j] += db[j];
            }
        }
        const CosinePolynomial sum(s);
        if (!sum.is_zero()) {
            CHECK(l1_norm(sum).value <= la + l1_norm(b).value + 1e-8);
        }
    }
}

TEST_CASE("thm_1_4_rhs examples") {
    CHECK(thm_1_4_rhs(sparse({{1, 1.0}})) == doctest::Approx(1.0 / 40));
    CHECK(thm_1_4_rhs(sparse({{0, 1.0}})) == doctest::Approx(1.0 / 30));
    // single exponential of modulus 1 would give 1/30; here the mirror pair of
    // cos(2t) with amplitude 2 gives (1/30)(1 + 1/2)
    CHECK(thm_1_4_rhs(sparse({{2, 2.0}})) == doctest::Approx(1.0 / 20));
}

TEST_CASE("lemma_3_8_rhs examples") {
    CHECK(lemma_3_8_rhs(sparse({{0, 1.0}})) == doctest::Approx(1.0 / 60));
    CHECK(lemma_3_8_rhs(sparse({{0, 1.0}, {1, 1.0}})) == doctest::Approx(1.0 / 40));
    const double h5 = 1 + 1.0 / 2 + 1.0 / 3 + 1.0 / 4 + 1.0 / 5;
    CHECK(lemma_3_8_rhs(sparse({{1, 1.0}, {2, 1.0}, {3, 1.0}, {4, 1.0}, {5, 1.0}})) == doctest::Approx(h5 / 60));
}

TEST_CASE("lemma_3_9_upper examples") {
    const UpperBounds a = lemma_3_9_upper(sparse({{1, 1.0}}), 3);
    CHECK(a.sharp == doctest::Approx(6 * pi));
    const UpperBounds b = lemma_3_9_upper(sparse({{0, 1.0}, {1, 1.0}}), 2);
    CHECK(b.sharp == doctest::Approx(4 * (pi + 1)));
    CHECK_THROWS_AS(lemma_3_9_upper(sparse({{1, 1.0}}), 0), RangeError);
    for (std::uint64_t m = 1; m <= 64; ++m) {
        std::vector<CosineTerm> v;
        for (std::uint64_t j = 0; j <= m; ++j) {
            v.push_back({j + 1, 1.0});
        }
        const UpperBounds u = lemma_3_9_upper(CosineSparse(v), 5);
        CHECK(u.sharp <= u.log);
    }
}

TEST_CASE("verifier reports") {
    const LowerReport lo = verify_l1_lower(sparse({{1, 1.0}}), LowerCheck::thm14);
    CHECK(lo.pass);
    CHECK(lo.lhs == doctest::Approx(4.0));
    CHECK(lo.rhs == doctest::Approx(1.0 / 40));
    CHECK(lo.margin > 3.9);
    const UpperReport up = verify_l1_upper(sparse({{1, 1.0}}));
    CHECK(up.pass);
    CHECK(up.k_used == 3);
    CHECK(up.bound_sharp == doctest::Approx(6 * pi));
    const nlohmann::json j = to_json(up);
    CHECK(j["K_used"] == 3);
    CHECK(to_json(lo)["check"] == "thm14");
}

TEST_CASE("random suite is deterministic and in range") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        const CosineSparse a = random_cosine_sparse(42, i);
        const CosineSparse b = random_cosine_sparse(42, i);
        REQUIRE(a.terms().size() == b.terms().size());
        CHECK(to_json(a) == to_json(b));
        CHECK(a.terms().size() <= 33);
        CHECK(a.max_frequency() <= 128);
        for (const auto& t : a.terms()) {
            CHECK((std::abs(t.amplitude) == 1.0 || std::abs(t.amplitude) == 2.0));
        }
    }
}

TEST_CASE("antiderivative") {
    CHECK(antiderivative(CosinePolynomial{1})(pi) == doctest::Approx(pi));
    CHECK(antiderivative(CosinePolynomial{0, 1})(0.7) == doctest::Approx(std::sin(0.7)));
    const CosinePolynomial c{3, -1, 0, 4, 2};
    const Antiderivative r = antiderivative(c);
    CHECK(r.coefficients()[3] == Rational(4, 3));
    for (double x : {-2.0, -0.3, 0.4, 1.9}) {
        const double h = 1e-5;
        CHECK((r(x + h) - r(x - h)) / (2 * h) == doctest::Approx(eval_cosine(c, x)).epsilon(1e-7));
        const double integral = adaptive_gauss_legendre([&](double t) { return eval_cosine(c, t); }, 0.0, x, 1e-12).value;
        CHECK(r(x) == doctest::Approx(integral).epsilon(1e-10));
    }
}

TEST_CASE("antiderivative sup stays bounded on the counterexample family") {
    // R_n for the family stays O(1) on a window; only exploratory, no constant asserted
    const double base = antiderivative_sup(counterexample_family(2), pi / 4, 2001);
    CHECK(base > 0);
    for (std::int64_t n : {4, 16, 64, 128}) {
        CHECK(antiderivative_sup(counterexample_family(n), pi / 4, 2001) <= 10 * base);
    }
}

TEST_CASE("windowed_l1") {
    CHECK(windowed_l1(Coefficients{1}, 0.5).value == doctest::Approx(1.0));
    CHECK(windowed_l1(Coefficients{1}, 2.0).value == doctest::Approx(4.0));
    const double oracle =
        simpson([](double t) { return std::abs(eval_unit_circle(Coefficients{1, 1, 1}, t)); }, -pi / 2, pi / 2, 1000000);
    CHECK(std::abs(windowed_l1(Coefficients{1, 1, 1}, pi / 2).value - oracle) < 1e-8);
    CHECK_THROWS_AS(windowed_l1(Coefficients{1}, 0.0), RangeError);
    CHECK_THROWS_AS(windowed_l1(Coefficients{1}, pi), RangeError);
    double last = 0;
    for (double d : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        const double v = windowed_l1(Coefficients{1, -1, 1, 1}, d).value;
        CHECK(v >= last);
        last = v;
    }
}
