#include "unimodular/zero_count.hpp"

#include "unimodular/errors.hpp"
#include "unimodular/exact_poly.hpp"
#include "unimodular/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace ul {

namespace {

using exact::IntPoly;

constexpr double kPi = std::numbers::pi;
constexpr double kIsolationWidth = 1e-12;

// A root of the square-free part, either pinned exactly or bracketed by an
// open interval whose endpoints have opposite signs.
struct Bracket {
    Rational lo;
    Rational hi;
    bool exact = false;
};

// Floating sign oracle for the square-free part; `sign` is empty when the
// value is within the rounding bound.
class ApproxSign {
public:
    ApproxSign(std::vector<double> cheb, int orientation) : cheb_(std::move(cheb)), orientation_(orientation) {
        double mass = 0.0;
        for (double c : cheb_) {
            mass += std::abs(c);
        }
        const double n = static_cast<double>(cheb_.size());
        bound_ = 8.0 * n * n * std::numeric_limits<double>::epsilon() * mass + std::numeric_limits<double>::min();
    }

    std::optional<int> operator()(double x) const {
        const double v = eval_chebyshev_series(cheb_, x);
        if (!(std::abs(v) > bound_)) {
            return std::nullopt;
        }
        return orientation_ * (v > 0 ? 1 : -1);
    }

private:
    std::vector<double> cheb_;
    int orientation_;
    double bound_ = 0.0;
};

Rational snap_dyadic(double x) {
    // 2^-52 grid keeps bisection denominators small
    const double scaled = std::nearbyint(std::ldexp(x, 52));
    Rational q(scaled);
    q /= Rational(Integer(1) << 52);
    q.canonicalize();
    return q;
}

class Isolator {
public:
    Isolator(const IntPoly& g, const exact::SturmChain& chain, const ApproxSign& approx)
        : g_(g), chain_(chain), approx_(approx) {}

    std::vector<Bracket> run() {
        const Rational lo(-1);
        const Rational hi(1);
        const int expected = chain_.count_roots(lo, hi);
        if (expected == 0) {
            return {};
        }
        std::vector<Bracket> found = grid_pass(expected);
        if (static_cast<int>(found.size()) != expected) {
            found.clear();
            bisect(lo, hi, chain_.variations(lo), chain_.variations(hi), found);
        }
        for (auto& b : found) {
            refine(b);
        }
        return found;
    }

private:
    int exact_sign(const Rational& x) const { return exact::sign_at(g_, x); }

    int sign(const Rational& x) const {
        if (auto s = approx_(x.get_d())) {
            return *s;
        }
        return exact_sign(x);
    }

    std::vector<Bracket> grid_pass(int expected) const {
        const std::size_t deg = static_cast<std::size_t>(exact::degree(g_));
        const std::size_t m = std::max<std::size_t>(64, 16 * deg);
        std::vector<Rational> xs{Rational(-1)};
        for (std::size_t i = m - 1; i >= 1; --i) {
            Rational x = snap_dyadic(std::cos(kPi * static_cast<double>(i) / static_cast<double>(m)));
            if (x > xs.back() && x < 1) {
                xs.push_back(std::move(x));
            }
        }
        xs.emplace_back(1);

        const std::size_t k = xs.size();
        std::vector<int> s(k, 0);
        std::vector<bool> is_exact(k, false);
        auto make_exact = [&](std::size_t i) {
            if (!is_exact[i]) {
                s[i] = exact_sign(xs[i]);
                is_exact[i] = true;
            }
        };
        make_exact(0);
        make_exact(k - 1);
        for (std::size_t i = 1; i + 1 < k; ++i) {
            if (auto a = approx_(xs[i].get_d())) {
                s[i] = *a;
            } else {
                make_exact(i);
            }
        }
        // every apparent sign change must be confirmed by exact endpoint signs
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i + 1 < k; ++i) {
                if (s[i] != s[i + 1] && !(is_exact[i] && is_exact[i + 1])) {
                    make_exact(i);
                    make_exact(i + 1);
                    changed = true;
                }
            }
        }
        std::vector<Bracket> out;
        for (std::size_t i = 0; i < k; ++i) {
            if (s[i] == 0) {
                out.push_back({xs[i], xs[i], true});
            } else if (i + 1 < k && s[i + 1] != 0 && s[i] != s[i + 1]) {
                out.push_back({xs[i], xs[i + 1], false});
            }
        }
        if (static_cast<int>(out.size()) > expected) {
            throw std::logic_error("grid isolation found more roots than the Sturm count");
        }
        return out;
    }

    // Roots in (lo, hi] with g(lo) != 0 and g(hi) != 0.
    void bisect(const Rational& lo, const Rational& hi, int v_lo, int v_hi, std::vector<Bracket>& out) const {
        const int count = v_lo - v_hi;
        if (count <= 0) {
            return;
        }
        if (count == 1) {
            out.push_back({lo, hi, false});
            return;
        }
        const Rational width = hi - lo;
        Rational mid;
        for (int attempt = 0;; ++attempt) {
            // 1/2, 1/2 - 1/64, 1/2 + 1/64, 1/2 - 2/64, ... of the interval
            const int offset = (attempt + 1) / 2 * ((attempt % 2 == 1) ? -1 : 1);
            mid = lo + width * Rational(32 + offset, 64);
            if (exact_sign(mid) != 0) {
                break;
            }
        }
        const int v_mid = chain_.variations(mid);
        bisect(lo, mid, v_lo, v_mid, out);
        bisect(mid, hi, v_mid, v_hi, out);
    }

    void refine(Bracket& b) const {
        if (b.exact) {
            return;
        }
        const Bracket original = b;
        const int s_lo = exact_sign(b.lo);
        if (!narrow(b, s_lo, /*trust_approx=*/true)) {
            b = original;
            narrow(b, s_lo, false);
        }
    }

    // Bisection to kIsolationWidth; returns false if the final bracket fails
    // the exact sign check (possible only when a floating sign misled us).
    bool narrow(Bracket& b, int s_lo, bool trust_approx) const {
        const Rational eps(1, Integer(1) << 40); // 2^-40 < 1e-12
        while (b.hi - b.lo > eps) {
            Rational mid = (b.lo + b.hi) / 2;
            const int s = trust_approx ? sign(mid) : exact_sign(mid);
            if (s == 0 || (trust_approx && exact_sign(mid) == 0)) {
                if (exact_sign(mid) == 0) {
                    b = {mid, mid, true};
                    return true;
                }
            }
            if (s == s_lo) {
                b.lo = std::move(mid);
            } else {
                b.hi = std::move(mid);
            }
        }
        return !trust_approx || (exact_sign(b.lo) == s_lo && exact_sign(b.hi) == -s_lo);
    }

    const IntPoly& g_;
    const exact::SturmChain& chain_;
    const ApproxSign& approx_;
};

void push_zero(ZeroReport& r, double t, std::size_t multiplicity, bool certified) {
    r.distinct.push_back({t, multiplicity, certified});
    r.total_with_multiplicity += multiplicity;
}

void finalize(ZeroReport& r) {
    std::sort(r.distinct.begin(), r.distinct.end(),
              [](const ZeroLocation& a, const ZeroLocation& b) { return a.t < b.t; });
}

double wrap_period(double t) {
    while (t >= kPi) {
        t -= 2.0 * kPi;
    }
    while (t < -kPi) {
        t += 2.0 * kPi;
    }
    return t;
}

// k-th derivative of sum c_j cos(jt)
double cosine_derivative(const std::vector<double>& c, unsigned k, double t) {
    double s = 0.0;
    for (std::size_t j = 1; j < c.size(); ++j) {
        const double jd = static_cast<double>(j);
        const double w = c[j] * std::pow(jd, static_cast<double>(k));
        switch (k % 4) {
        case 0: s += w * std::cos(jd * t); break;
        case 1: s -= w * std::sin(jd * t); break;
        case 2: s -= w * std::cos(jd * t); break;
        default: s += w * std::sin(jd * t); break;
        }
    }
    return k == 0 ? s + c[0] : s;
}

double derivative_scale(const std::vector<double>& c, unsigned k) {
    double s = k == 0 ? std::abs(c[0]) : 0.0;
    for (std::size_t j = 1; j < c.size(); ++j) {
        s += std::abs(c[j]) * std::pow(static_cast<double>(j), static_cast<double>(k));
    }
    return s;
}

constexpr double kNegligible = 1e-7;
constexpr unsigned kMaxOrder = 8;

// Order of the zero at t0: first derivative that is not negligible against its
// coefficient scale, polishing t0 onto a root of the previous derivative first.
// Parity comes from the sign pattern the grid saw.
std::size_t float_multiplicity(const std::vector<double>& c, double t0, bool odd, double h) {
    unsigned m = kMaxOrder;
    for (unsigned k = 1; k <= kMaxOrder; ++k) {
        double t = t0;
        for (int it = 0; it < 60; ++it) {
            const double d1 = cosine_derivative(c, k, t);
            if (d1 == 0.0) {
                break;
            }
            const double step = cosine_derivative(c, k - 1, t) / d1;
            if (!std::isfinite(step) || std::abs(t - step - t0) > h) {
                break;
            }
            t -= step;
            if (std::abs(step) < 1e-15) {
                break;
            }
        }
        t0 = t;
        if (std::abs(cosine_derivative(c, k, t0)) >= kNegligible * derivative_scale(c, k)) {
            m = k;
            break;
        }
    }
    if ((m % 2 == 1) != odd) {
        ++m;
    }
    return m;
}

// Sign changes split by rounding noise around a multiple zero arrive as a
// tight cluster; merge them and recount by derivatives.
void refine_multiplicities(ZeroReport& r, const std::vector<double>& c, double h, double tol) {
    if (r.distinct.empty()) {
        return;
    }
    const double gap_limit = h;
    const auto& z = r.distinct;
    std::vector<std::vector<std::size_t>> clusters{{0}};
    for (std::size_t i = 1; i < z.size(); ++i) {
        const double gap = z[i].t - z[i - 1].t;
        const double mid = 0.5 * (z[i].t + z[i - 1].t);
        if (gap < gap_limit && std::abs(cosine_derivative(c, 0, mid)) < tol) {
            clusters.back().push_back(i);
        } else {
            clusters.push_back({i});
        }
    }
    if (clusters.size() > 1) {
        const double gap = z.front().t + 2.0 * kPi - z.back().t;
        const double mid = z.back().t + 0.5 * gap;
        if (gap < gap_limit && std::abs(cosine_derivative(c, 0, mid)) < tol) {
            auto& last = clusters.back();
            last.insert(last.end(), clusters.front().begin(), clusters.front().end());
            clusters.erase(clusters.begin());
        }
    }

    ZeroReport out;
    out.method = r.method;
    for (const auto& cl : clusters) {
        std::size_t sum = 0;
        for (std::size_t i : cl) {
            sum += z[i].multiplicity;
        }
        // unwrap across -pi so the centre is taken on one side
        double lo = z[cl.front()].t;
        double hi = z[cl.back()].t;
        if (hi < lo) {
            hi += 2.0 * kPi;
        }
        const double centre = 0.5 * (lo + hi);
        push_zero(out, wrap_period(centre), float_multiplicity(c, centre, sum % 2 == 1, h), false);
    }
    finalize(out);
    r = std::move(out);
}

} // namespace

const char* to_string(CountMethod m) { return m == CountMethod::exact_sturm ? "exact-sturm" : "float-grid"; }

ZeroReport count_period_zeros_exact(const CosinePolynomial& c) {
    if (c.is_zero()) {
        throw DegenerateInputError("cannot count zeros of the zero cosine polynomial");
    }
    if (c.degree() > kExactDegreeCap) {
        throw CapacityError("cosine degree " + std::to_string(c.degree()) + " exceeds the exact cap of " +
                            std::to_string(kExactDegreeCap) + "; use the float-grid counter");
    }
    ZeroReport report;
    report.method = CountMethod::exact_sturm;

    const ChebyshevForm f = cosine_to_chebyshev(c);
    IntPoly core = exact::from_rationals(f.values());
    const std::size_t at_plus_one = exact::strip_unit_root(core, false);
    const std::size_t at_minus_one = exact::strip_unit_root(core, true);
    if (at_plus_one > 0) {
        push_zero(report, 0.0, 2 * at_plus_one, true);
    }
    if (at_minus_one > 0) {
        push_zero(report, -kPi, 2 * at_minus_one, true);
    }

    if (exact::degree(core) > 0) {
        const exact::SturmChain chain(core);
        const IntPoly g1 = chain.gcd_with_derivative();
        const bool square_free = exact::degree(g1) == 0;

        std::vector<IntPoly> factors;
        IntPoly g;
        std::optional<exact::SturmChain> g_chain;
        std::vector<double> cheb;
        int orientation = 1;
        if (square_free) {
            g = core;
            factors.push_back(core);
            // sign(core) = (-1)^(order at +1) * sign(F) on (-1, 1)
            cheb = c.to_doubles();
            orientation = (at_plus_one % 2 == 0) ? 1 : -1;
        } else {
            factors = exact::square_free_factors(core, &g1);
            g = exact::divide_exact(core, g1);
            g_chain.emplace(g);
            std::vector<Rational> monomial(g.begin(), g.end());
            const CosinePolynomial as_cosine = chebyshev_to_cosine(monomial);
            double scale = 0.0;
            for (const auto& q : as_cosine.values()) {
                scale = std::max(scale, std::abs(q.get_d()));
            }
            cheb = as_cosine.to_doubles();
            if (scale > 0.0 && std::isfinite(scale)) {
                for (double& v : cheb) {
                    v /= scale;
                }
            }
            orientation = 1;
        }
        const ApproxSign approx(std::move(cheb), orientation);
        Isolator isolator(g, g_chain ? *g_chain : chain, approx);
        for (const Bracket& b : isolator.run()) {
            std::size_t multiplicity = 1;
            if (factors.size() > 1) {
                for (std::size_t k = 0; k < factors.size(); ++k) {
                    if (exact::degree(factors[k]) <= 0) {
                        continue;
                    }
                    const bool owns = b.exact ? exact::sign_at(factors[k], b.lo) == 0
                                              : exact::sign_at(factors[k], b.lo) * exact::sign_at(factors[k], b.hi) < 0;
                    if (owns) {
                        multiplicity = k + 1;
                        break;
                    }
                }
            }
            const double x = b.exact ? b.lo.get_d() : Rational((b.lo + b.hi) / 2).get_d();
            const double t = std::acos(std::clamp(x, -1.0, 1.0));
            push_zero(report, -t, multiplicity, true);
            push_zero(report, t, multiplicity, true);
        }
    }
    finalize(report);
    return report;
}

ZeroReport count_period_zeros_float(const std::function<double(double)>& f, std::size_t grid_size, double tol) {
    if (!(tol > 0.0)) {
        throw PreconditionError("float zero counter needs tol > 0");
    }
    if (grid_size < 8) {
        throw PreconditionError("float zero counter needs grid_size >= 8");
    }
    ZeroReport report;
    report.method = CountMethod::float_grid;

    const std::size_t g = grid_size;
    const double h = 2.0 * kPi / static_cast<double>(g);
    auto grid_t = [&](std::size_t i) { return -kPi + h * static_cast<double>(i); };
    std::vector<double> v(g);
    for (std::size_t i = 0; i < g; ++i) {
        v[i] = f(grid_t(i));
    }
    auto sgn = [](double x) { return (x > 0.0) - (x < 0.0); };

    for (std::size_t i = 0; i < g; ++i) {
        const double vi = v[i];
        const double vp = v[(i + g - 1) % g];
        const double vn = v[(i + 1) % g];
        const double ti = grid_t(i);
        if (vi == 0.0) {
            push_zero(report, wrap_period(ti), sgn(vp) * sgn(vn) < 0 ? 1 : 2, false);
            continue;
        }
        if (vn != 0.0 && sgn(vi) != sgn(vn)) {
            double a = ti;
            double b = ti + h;
            const int sa = sgn(vi);
            while (b - a > 1e-10) {
                const double mid = 0.5 * (a + b);
                const double fm = f(mid);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if (sgn(fm) == sa) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            push_zero(report, wrap_period(0.5 * (a + b)), 1, false);
            continue;
        }
        const bool local_min = vp != 0.0 && vn != 0.0 && sgn(vp) == sgn(vi) && sgn(vn) == sgn(vi) &&
                               std::abs(vi) <= std::abs(vp) && std::abs(vi) < std::abs(vn);
        if (local_min) {
            // golden-section search for the minimum of |f| on [t_i - h, t_i + h]
            const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
            double a = ti - h;
            double b = ti + h;
            double x1 = b - phi * (b - a);
            double x2 = a + phi * (b - a);
            double f1 = std::abs(f(x1));
            double f2 = std::abs(f(x2));
            while (b - a > 1e-10) {
                if (f1 < f2) {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - phi * (b - a);
                    f1 = std::abs(f(x1));
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + phi * (b - a);
                    f2 = std::abs(f(x2));
                }
            }
            const double tm = 0.5 * (a + b);
            const double fm = std::min({std::abs(f(tm)), f1, f2});
            if (fm < tol) {
                push_zero(report, wrap_period(tm), 2, false);
            }
        }
    }
    finalize(report);
    return report;
}

ZeroReport count_period_zeros_float(const CosinePolynomial& c, std::size_t grid_size, double tol) {
    if (c.is_zero()) {
        throw DegenerateInputError("cannot count zeros of the zero cosine polynomial");
    }
    if (grid_size < 8 * c.degree()) {
        throw PreconditionError("grid_size must be at least 8 * degree");
    }
    const std::vector<double> coeffs = c.to_doubles();
    ZeroReport r = count_period_zeros_float([&](double t) { return eval_cosine(coeffs, t); }, grid_size, tol);
    refine_multiplicities(r, coeffs, 2.0 * kPi / static_cast<double>(grid_size), tol);
    return r;
}

ZeroReport count_period_zeros_float(const CosinePolynomial& c, const FloatGridOptions& options) {
    const std::size_t grid = options.grid_size != 0 ? options.grid_size : std::max<std::size_t>(64, 16 * c.degree());
    return count_period_zeros_float(c, grid, options.tangency_tol);
}

ZeroReport count_period_zeros(const CosinePolynomial& c) {
    if (c.degree() > kExactDegreeCap) {
        return count_period_zeros_float(c);
    }
    return count_period_zeros_exact(c);
}

ZeroReport nz_unit_circle(const Coefficients& p) {
    if (p.is_zero()) {
        throw DegenerateInputError("cannot count unimodular zeros of the zero polynomial");
    }
    IntPoly core = exact::from_rationals(p.values());
    // factors z^s carry no unimodular zeros
    const auto first = std::find_if(core.begin(), core.end(), [](const Integer& z) { return z != 0; });
    core.erase(core.begin(), first);

    ZeroReport report;
    report.method = CountMethod::exact_sturm;
    const std::size_t at_one = exact::strip_unit_root(core, false);
    const std::size_t at_minus_one = exact::strip_unit_root(core, true);

    if (exact::degree(core) > 0) {
        const IntPoly rev = exact::reversed(core);
        IntPoly common;
        if (rev == core || rev == exact::negated(core)) {
            common = exact::normalized(core);
        } else {
            common = exact::gcd(core, rev);
        }
        // unimodular zeros of a real polynomial are shared with its reciprocal
        // adjoint with equal multiplicity, so multiplicities in `common` are those in P
        if (exact::degree(common) > 0) {
            if (exact::reversed(common) != common || exact::degree(common) % 2 != 0) {
                throw std::logic_error("reciprocal core is not an even self-reciprocal polynomial");
            }
            const std::size_t m = static_cast<std::size_t>(exact::degree(common)) / 2;
            std::vector<Rational> c(m + 1);
            c[0] = common[m];
            for (std::size_t j = 1; j <= m; ++j) {
                c[j] = 2 * common[m + j];
            }
            const ZeroReport inner = count_period_zeros_exact(CosinePolynomial(std::move(c)));
            report.distinct = inner.distinct;
            report.total_with_multiplicity = inner.total_with_multiplicity;
        }
    }
    if (at_one > 0) {
        push_zero(report, 0.0, at_one, true);
    }
    if (at_minus_one > 0) {
        push_zero(report, -kPi, at_minus_one, true);
    }
    finalize(report);
    return report;
}

ZeroReport nz_unit_circle_float(const Coefficients& p, const FloatGridOptions& options) {
    if (!is_self_reciprocal(p)) {
        throw StructureError("float unimodular screen needs a self-reciprocal polynomial");
    }
    if (p.declared_degree() % 2 == 0) {
        return count_period_zeros_float(self_reciprocal_to_cosine(p), options);
    }
    ZeroReport lifted = count_period_zeros_float(self_reciprocal_to_cosine(lift_odd_degree(p)), options);
    // remove the zero contributed by the (z + 1) factor
    auto it = std::find_if(lifted.distinct.begin(), lifted.distinct.end(),
                           [](const ZeroLocation& z) { return std::abs(std::abs(z.t) - kPi) < 1e-6; });
    if (it == lifted.distinct.end()) {
        throw std::logic_error("lifted polynomial is missing its zero at t = pi");
    }
    if (--it->multiplicity == 0) {
        lifted.distinct.erase(it);
    }
    --lifted.total_with_multiplicity;
    return lifted;
}

nlohmann::json to_json(const ZeroReport& report) {
    nlohmann::json zeros = nlohmann::json::array();
    bool all_certified = !report.distinct.empty() || report.method == CountMethod::exact_sturm;
    for (const auto& z : report.distinct) {
        zeros.push_back({{"t", format_real(z.t)}, {"multiplicity", z.multiplicity}, {"certified", z.certified}});
        all_certified = all_certified && z.certified;
    }
    return {{"method", to_string(report.method)},
            {"certified", all_certified && report.method == CountMethod::exact_sturm},
            {"total", report.total_with_multiplicity},
            {"distinct", report.distinct.size()},
            {"zeros", zeros}};
}

} // namespace ul
