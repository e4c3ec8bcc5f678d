#pragma once

#include "unimodular/poly_core.hpp"

#include <json.hpp>

#include <cstddef>
#include <functional>
#include <vector>

namespace ul {

enum class CountMethod { exact_sturm, float_grid };

struct ZeroLocation {
    double t = 0.0; ///< radians in [-pi, pi)
    std::size_t multiplicity = 1;
    bool certified = false;
};

/// Distinct zeros in one period, sorted by location, with multiplicities.
struct ZeroReport {
    std::vector<ZeroLocation> distinct;
    std::size_t total_with_multiplicity = 0;
    CountMethod method = CountMethod::exact_sturm;

    std::size_t distinct_count() const noexcept { return distinct.size(); }
};

/// Zeros of sum c_j cos(jt) in [-pi, pi) with multiplicity, exact rational
/// pipeline: Chebyshev substitution, gcd chain for multiplicities, Sturm
/// isolation of the square-free part on (-1, 1), bisection to width 1e-12.
/// x = 1 maps to t = 0 and x = -1 to t = -pi, each with doubled multiplicity.
/// Throws DegenerateInputError for the zero polynomial and CapacityError above
/// kExactDegreeCap.
ZeroReport count_period_zeros_exact(const CosinePolynomial& c);

struct FloatGridOptions {
    std::size_t grid_size = 0; ///< 0 selects 16 * degree (at least 64)
    double tangency_tol = 1e-8;
};

/// Screening counter: sign changes on a uniform grid over [-pi, pi), refined by
/// bisection to 1e-10, plus tangency candidates (local minimum of |T| below the
/// tolerance without a sign change), which count twice. For cosine polynomials
/// zeros less than a grid step apart with |T| below tol between them are merged, and the
/// multiplicity is the order of the first derivative above 1e-7 of its
/// coefficient scale, with the parity the grid saw. Never certified.
/// Throws PreconditionError if grid_size < 8 * degree or tol <= 0.
ZeroReport count_period_zeros_float(const CosinePolynomial& c, std::size_t grid_size, double tol);
ZeroReport count_period_zeros_float(const CosinePolynomial& c, const FloatGridOptions& options = {});

/// Same screening algorithm for an arbitrary 2 pi periodic real function, without
/// the derivative pass: sign changes count once, tangencies twice.
ZeroReport count_period_zeros_float(const std::function<double(double)>& f, std::size_t grid_size, double tol);

/// Exact path up to kExactDegreeCap, floating path with default options above it.
ZeroReport count_period_zeros(const CosinePolynomial& c);

/// Zeros of P on the unit circle (location t of e^{it}), with multiplicity in P.
/// Exact rational pipeline: common factor with the reciprocal adjoint, explicit
/// (z - 1) and (z + 1) factors, the remaining self-reciprocal core through its
/// cosine form. Throws DegenerateInputError for the zero polynomial.
ZeroReport nz_unit_circle(const Coefficients& p);

/// Floating screen for self-reciprocal p: even degree through its cosine form,
/// odd degree through (z + 1) P with the added zero at t = -pi removed.
/// Throws StructureError for other inputs.
ZeroReport nz_unit_circle_float(const Coefficients& p, const FloatGridOptions& options = {});

nlohmann::json to_json(const ZeroReport& report);
const char* to_string(CountMethod m);

} // namespace ul
