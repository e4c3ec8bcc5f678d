#pragma once

#include "unimodular/poly_core.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ul {

struct QuadratureResult {
    double value = 0.0;
    double error_bound = 0.0;
    std::size_t subintervals = 0;
};

struct CosineTerm {
    std::uint64_t frequency = 0;
    double amplitude = 0.0;
};

/// Q(t) = sum A_j cos(lambda_j t), frequencies strictly increasing. Terms with
/// zero amplitude are dropped on construction.
class CosineSparse {
public:
    CosineSparse() = default;
    explicit CosineSparse(std::vector<CosineTerm> terms);
    static CosineSparse from(const CosinePolynomial& c);

    std::span<const CosineTerm> terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::uint64_t max_frequency() const noexcept { return terms_.empty() ? 0 : terms_.back().frequency; }
    double max_amplitude() const noexcept;

    double operator()(double t) const;

    /// Dense rational copy, for the exact zero counter.
    CosinePolynomial to_cosine_polynomial() const;

private:
    std::vector<CosineTerm> terms_;
};

/// 16-point Gauss-Legendre, bisected until the whole-interval and two-half
/// estimates agree to `tol` (budget halves on each split).
QuadratureResult adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b, double tol);

/// Integral of |T| over one period, split at the float-grid zeros (grid
/// 32 * max frequency, at least 64), 1e-10 per sign-constant piece.
/// Throws DegenerateInputError for T = 0.
QuadratureResult l1_norm(const CosinePolynomial& c);
QuadratureResult l1_norm(const CosineSparse& q);

/// (1/30) sum_j |a_j| / j over the exponential expansion sorted by frequency;
/// A cos(lambda t) gives two terms of modulus |A|/2, lambda = 0 gives one.
double thm_1_4_rhs(const CosineSparse& q);

/// (1/60) sum_{j=0}^{m} |A_{m-j}| / (j + 1).
double lemma_3_8_rhs(const CosineSparse& q);

struct UpperBounds {
    double sharp = 0.0; ///< 2KA (pi + sum_{j>=1} 1/lambda_j)
    double log = 0.0;   ///< 2KA (5 + log m), log 1 used when m = 0
};

/// Throws RangeError when k_bound < 1.
UpperBounds lemma_3_9_upper(const CosineSparse& q, std::size_t k_bound);

enum class LowerCheck { thm14, lemma38 };

struct LowerReport {
    LowerCheck check = LowerCheck::thm14;
    double lhs = 0.0;
    double error_bound = 0.0;
    double rhs = 0.0;
    double margin = 0.0; ///< lhs + error_bound - rhs
    bool pass = false;
};

LowerReport verify_l1_lower(const CosineSparse& q, LowerCheck check);

struct UpperReport {
    double lhs = 0.0;
    double error_bound = 0.0;
    std::size_t k_used = 0; ///< distinct zeros in the period + 1
    double bound_sharp = 0.0;
    double bound_log = 0.0;
    bool pass = false;
};

/// Zeros are counted exactly when the top frequency is within the exact cap.
UpperReport verify_l1_upper(const CosineSparse& q);

/// R(x) = c_0 x + sum (c_j / j) sin(jx).
class Antiderivative {
public:
    explicit Antiderivative(const CosinePolynomial& c);

    double operator()(double x) const;
    /// Exact rational coefficients: [c_0, c_1 / 1, c_2 / 2, ...].
    std::span<const Rational> coefficients() const noexcept { return exact_; }

private:
    std::vector<Rational> exact_;
    std::vector<double> sine_;
    double linear_ = 0.0;
};

Antiderivative antiderivative(const CosinePolynomial& c);

/// max |R(x)| over |x| <= delta on a uniform grid of `samples` points.
double antiderivative_sup(const CosinePolynomial& c, double delta, std::size_t samples = 20001);

/// Integral of |P(e^{it})| over [-delta, delta], split at unimodular zeros.
/// Throws RangeError unless 0 < delta < pi.
QuadratureResult windowed_l1(const Coefficients& p, double delta);

/// Instance `index` of the seeded suite: m + 1 terms with m uniform in
/// 0..max_m, distinct frequencies uniform in [0, max_frequency], amplitudes
/// uniform in {-2, -1, 1, 2}. Drawn from RngStream(seed, index << 20).
CosineSparse random_cosine_sparse(std::uint64_t seed, std::uint64_t index, std::size_t max_m = 32,
                                  std::uint64_t max_frequency = 128);

const char* to_string(LowerCheck c);
nlohmann::json to_json(const QuadratureResult& r);
nlohmann::json to_json(const LowerReport& r);
nlohmann::json to_json(const UpperReport& r);
nlohmann::json to_json(const CosineSparse& q);

} // namespace ul
