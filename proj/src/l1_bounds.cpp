#include "unimodular/l1_bounds.hpp"

#include "unimodular/errors.hpp"
#include "unimodular/random.hpp"
#include "unimodular/transforms.hpp"
#include "unimodular/zero_count.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace ul {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPieceTol = 1e-10;
constexpr int kMaxDepth = 48;

struct GaussRule {
    static constexpr std::size_t n = 16;
    std::array<double, n> x{};
    std::array<double, n> w{};

    GaussRule() {
        for (std::size_t i = 0; i < n; ++i) {
            double z = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0;
                double p1 = z;
                for (std::size_t k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * static_cast<double>(k) - 1.0) * z * p1 - (static_cast<double>(k) - 1.0) * p0) /
                                      static_cast<double>(k);
                    p0 = p1;
                    p1 = p2;
                }
                dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
                const double step = p1 / dp;
                z -= step;
                if (std::abs(step) < 1e-16) {
                    break;
                }
            }
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }
};

const GaussRule& rule() {
    static const GaussRule r;
    return r;
}

double gauss(const std::function<double(double)>& f, double a, double b) {
    const auto& g = rule();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t i = 0; i < GaussRule::n; ++i) {
        s += g.w[i] * f(mid + half * g.x[i]);
    }
    return s * half;
}

void adapt(const std::function<double(double)>& f, double a, double b, double whole, double tol, int depth,
           QuadratureResult& acc) {
    const double m = 0.5 * (a + b);
    const double left = gauss(f, a, m);
    const double right = gauss(f, m, b);
    const double diff = std::abs(left + right - whole);
    if (diff <= tol || depth >= kMaxDepth || m <= a || m >= b) {
        acc.value += left + right;
        acc.error_bound += diff;
        acc.subintervals += 2;
        return;
    }
    adapt(f, a, m, left, 0.5 * tol, depth + 1, acc);
    adapt(f, m, b, right, 0.5 * tol, depth + 1, acc);
}

// |f| over [lo, hi] split at the given interior points.
QuadratureResult integrate_abs(const std::function<double(double)>& f, double lo, double hi, std::vector<double> cuts) {
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> edges{lo};
    for (double c : cuts) {
        if (c > edges.back() && c < hi) {
            edges.push_back(c);
        }
    }
    edges.push_back(hi);
    const std::function<double(double)> g = [&](double t) { return std::abs(f(t)); };
    QuadratureResult total;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const QuadratureResult piece = adaptive_gauss_legendre(g, edges[i], edges[i + 1], kPieceTol);
        total.value += piece.value;
        total.error_bound += piece.error_bound;
        total.subintervals += piece.subintervals;
    }
    return total;
}

QuadratureResult period_l1(const std::function<double(double)>& f, std::uint64_t max_frequency) {
    const std::size_t grid = std::max<std::size_t>(64, 32 * static_cast<std::size_t>(max_frequency));
    const ZeroReport zeros = count_period_zeros_float(f, grid, 1e-8);
    std::vector<double> cuts;
    for (const auto& z : zeros.distinct) {
        cuts.push_back(z.t);
    }
    return integrate_abs(f, -kPi, kPi, std::move(cuts));
}

} // namespace

CosineSparse::CosineSparse(std::vector<CosineTerm> terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!std::isfinite(terms[i].amplitude)) {
            throw DomainError("cosine amplitudes must be finite");
        }
        if (i > 0 && terms[i].frequency <= terms[i - 1].frequency) {
            throw DomainError("cosine frequencies must be strictly increasing");
        }
    }
    std::erase_if(terms, [](const CosineTerm& t) { return t.amplitude == 0.0; });
    terms_ = std::move(terms);
}

CosineSparse CosineSparse::from(const CosinePolynomial& c) {
    std::vector<CosineTerm> terms;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] != 0) {
            terms.push_back({j, c[j].get_d()});
        }
    }
    return CosineSparse(std::move(terms));
}

double CosineSparse::max_amplitude() const noexcept {
    double a = 0.0;
    for (const auto& t : terms_) {
        a = std::max(a, std::abs(t.amplitude));
    }
    return a;
}

double CosineSparse::operator()(double t) const {
    double s = 0.0;
    for (const auto& term : terms_) {
        s += term.amplitude * std::cos(static_cast<double>(term.frequency) * t);
    }
    return s;
}

CosinePolynomial CosineSparse::to_cosine_polynomial() const {
    std::vector<Rational> c(max_frequency() + 1);
    for (const auto& t : terms_) {
        c[t.frequency] = Rational(t.amplitude);
    }
    return CosinePolynomial(std::move(c));
}

QuadratureResult adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b, double tol) {
    QuadratureResult acc;
    if (a == b) {
        return acc;
    }
    if (b < a) {
        acc = adaptive_gauss_legendre(f, b, a, tol);
        acc.value = -acc.value;
        return acc;
    }
    adapt(f, a, b, gauss(f, a, b), tol, 0, acc);
    return acc;
}

QuadratureResult l1_norm(const CosinePolynomial& c) {
    if (c.is_zero()) {
        throw DegenerateInputError("L1 norm of the zero cosine polynomial");
    }
    const std::vector<double> coeffs = c.to_doubles();
    return period_l1([&](double t) { return eval_cosine(coeffs, t); }, c.degree());
}

QuadratureResult l1_norm(const CosineSparse& q) {
    if (q.is_zero()) {
        throw DegenerateInputError("L1 norm of the zero cosine sum");
    }
    return period_l1([&](double t) { return q(t); }, q.max_frequency());
}

double thm_1_4_rhs(const CosineSparse& q) {
    // terms are sorted by frequency, so the expansion is -lambda_m..-lambda_1, [0], lambda_1..lambda_m
    std::vector<double> moduli;
    const auto terms = q.terms();
    for (std::size_t i = terms.size(); i-- > 0;) {
        if (terms[i].frequency > 0) {
            moduli.push_back(std::abs(terms[i].amplitude) / 2.0);
        }
    }
    for (const auto& t : terms) {
        moduli.push_back(t.frequency == 0 ? std::abs(t.amplitude) : std::abs(t.amplitude) / 2.0);
    }
    double s = 0.0;
    for (std::size_t j = 0; j < moduli.size(); ++j) {
        s += moduli[j] / static_cast<double>(j + 1);
    }
    return s / 30.0;
}

double lemma_3_8_rhs(const CosineSparse& q) {
    const auto terms = q.terms();
    double s = 0.0;
    for (std::size_t j = 0; j < terms.size(); ++j) {
        s += std::abs(terms[terms.size() - 1 - j].amplitude) / static_cast<double>(j + 1);
    }
    return s / 60.0;
}

UpperBounds lemma_3_9_upper(const CosineSparse& q, std::size_t k_bound) {
    if (k_bound < 1) {
        throw RangeError("k_bound must be at least 1");
    }
    const auto terms = q.terms();
    const std::size_t m = terms.empty() ? 0 : terms.size() - 1;
    double harmonic = 0.0;
    for (std::size_t j = 1; j <= m; ++j) {
        harmonic += 1.0 / static_cast<double>(terms[j].frequency);
    }
    const double scale = 2.0 * static_cast<double>(k_bound) * q.max_amplitude();
    return {scale * (kPi + harmonic), scale * (5.0 + std::log(static_cast<double>(std::max<std::size_t>(m, 1))))};
}

LowerReport verify_l1_lower(const CosineSparse& q, LowerCheck check) {
    const QuadratureResult lhs = l1_norm(q);
    LowerReport r;
    r.check = check;
    r.lhs = lhs.value;
    r.error_bound = lhs.error_bound;
    r.rhs = check == LowerCheck::thm14 ? thm_1_4_rhs(q) : lemma_3_8_rhs(q);
    r.margin = r.lhs + r.error_bound - r.rhs;
    r.pass = r.margin >= 0.0;
    return r;
}

UpperReport verify_l1_upper(const CosineSparse& q) {
    const QuadratureResult lhs = l1_norm(q);
    const ZeroReport zeros = q.max_frequency() <= kExactDegreeCap
                                 ? count_period_zeros_exact(q.to_cosine_polynomial())
                                 : count_period_zeros_float(
                                       [&](double t) { return q(t); },
                                       std::max<std::size_t>(64, 32 * static_cast<std::size_t>(q.max_frequency())), 1e-8);
    UpperReport r;
    r.lhs = lhs.value;
    r.error_bound = lhs.error_bound;
    r.k_used = zeros.distinct_count() + 1;
    const UpperBounds b = lemma_3_9_upper(q, r.k_used);
    r.bound_sharp = b.sharp;
    r.bound_log = b.log;
    r.pass = r.lhs - r.error_bound <= r.bound_sharp;
    return r;
}

Antiderivative::Antiderivative(const CosinePolynomial& c) : exact_(c.size()), sine_(c.size()) {
    exact_[0] = c[0];
    linear_ = c[0].get_d();
    for (std::size_t j = 1; j < c.size(); ++j) {
        exact_[j] = c[j] / Rational(static_cast<long>(j));
        sine_[j] = exact_[j].get_d();
    }
}

double Antiderivative::operator()(double x) const {
    // Clenshaw for the sine series
    const double two_cos = 2.0 * std::cos(x);
    double b1 = 0.0;
    double b2 = 0.0;
    for (std::size_t j = sine_.size(); j-- > 1;) {
        const double b0 = sine_[j] + two_cos * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return linear_ * x + b1 * std::sin(x);
}

Antiderivative antiderivative(const CosinePolynomial& c) { return Antiderivative(c); }

double antiderivative_sup(const CosinePolynomial& c, double delta, std::size_t samples) {
    if (samples < 2) {
        throw RangeError("antiderivative_sup needs at least two samples");
    }
    const Antiderivative r(c);
    double best = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = -delta + 2.0 * delta * static_cast<double>(i) / static_cast<double>(samples - 1);
        best = std::max(best, std::abs(r(x)));
    }
    return best;
}

QuadratureResult windowed_l1(const Coefficients& p, double delta) {
    if (!(delta > 0.0 && delta < kPi)) {
        throw RangeError("windowed_l1 needs 0 < delta < pi");
    }
    if (p.is_zero()) {
        return {0.0, 0.0, 1};
    }
    std::vector<double> a;
    for (const auto& q : p.values()) {
        a.push_back(q.get_d());
    }
    auto value = [&](double t) {
        const std::complex<double> z = std::polar(1.0, t);
        std::complex<double> v = 0.0;
        for (std::size_t j = a.size(); j-- > 0;) {
            v = v * z + a[j];
        }
        return std::abs(v);
    };
    std::vector<double> cuts;
    if (p.size() <= 2 * kExactDegreeCap + 1) {
        for (const auto& z : nz_unit_circle(p).distinct) {
            cuts.push_back(z.t);
        }
    }
    return integrate_abs(value, -delta, delta, std::move(cuts));
}

CosineSparse random_cosine_sparse(std::uint64_t seed, std::uint64_t index, std::size_t max_m,
                                  std::uint64_t max_frequency) {
    if (max_frequency < max_m) {
        throw RangeError("max_frequency must be at least max_m");
    }
    RngStream rng(seed, index << 20);
    const std::size_t m = static_cast<std::size_t>(rng.below(max_m + 1));
    std::vector<std::uint64_t> freqs;
    while (freqs.size() < m + 1) {
        const std::uint64_t f = rng.below(max_frequency + 1);
        if (std::find(freqs.begin(), freqs.end(), f) == freqs.end()) {
            freqs.push_back(f);
        }
    }
    std::sort(freqs.begin(), freqs.end());
    static constexpr double kAmps[] = {-2.0, -1.0, 1.0, 2.0};
    std::vector<CosineTerm> terms;
    for (std::uint64_t f : freqs) {
        terms.push_back({f, kAmps[rng.below(4)]});
    }
    return CosineSparse(std::move(terms));
}

const char* to_string(LowerCheck c) { return c == LowerCheck::thm14 ? "thm14" : "lemma38"; }

nlohmann::json to_json(const QuadratureResult& r) {
    return {{"value", round12(r.value)}, {"error_bound", round12(r.error_bound)}, {"subintervals", r.subintervals}};
}

nlohmann::json to_json(const LowerReport& r) {
    return {{"check", to_string(r.check)},         {"lhs", round12(r.lhs)},
            {"error_bound", round12(r.error_bound)}, {"rhs", round12(r.rhs)},
            {"margin", round12(r.margin)},     {"pass", r.pass}};
}

nlohmann::json to_json(const UpperReport& r) {
    return {{"check", "lemma39"},
            {"lhs", round12(r.lhs)},
            {"error_bound", round12(r.error_bound)},
            {"K_used", r.k_used},
            {"bound_sharp", round12(r.bound_sharp)},
            {"bound_log", round12(r.bound_log)},
            {"pass", r.pass}};
}

nlohmann::json to_json(const CosineSparse& q) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : q.terms()) {
        terms.push_back({{"frequency", t.frequency}, {"amplitude", round12(t.amplitude)}});
    }
    return {{"terms", terms}};
}

} // namespace ul
