#include "unimodular/poly_core.hpp"

#include "unimodular/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace ul {

namespace {

std::vector<Rational> from_longs(std::initializer_list<long> xs) {
    std::vector<Rational> out;
    out.reserve(xs.size());
    for (long x : xs) {
        out.emplace_back(x);
    }
    return out;
}

std::vector<std::string> to_strings(std::span<const Rational> xs) {
    std::vector<std::string> out;
    out.reserve(xs.size());
    for (const auto& x : xs) {
        out.push_back(format_rational(x));
    }
    return out;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t result = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1U) {
            result = result * base % mod;
        }
        base = base * base % mod;
        exp >>= 1U;
    }
    return result;
}

constexpr std::int64_t kMaxPrime = 10'000'000;

// cos(2 pi s / 12); every root of unity of order 1, 2, 3, 4 or 6 is a twelfth root.
Rational cos_twelfths(std::size_t s) {
    static const std::array<Rational, 12> table = {
        Rational(1),  Rational(0), Rational(1, 2),  Rational(0), Rational(-1, 2), Rational(0),
        Rational(-1), Rational(0), Rational(-1, 2), Rational(0), Rational(1, 2),  Rational(0)};
    return table[s % 12];
}

} // namespace

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<Rational> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw PreconditionError("alphabet must be non-empty");
    }
    std::sort(elements_.begin(), elements_.end());
    if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
        throw PreconditionError("alphabet elements must be pairwise distinct");
    }
}

Alphabet::Alphabet(std::initializer_list<long> elements) : Alphabet(from_longs(elements)) {}

bool Alphabet::contains(const Rational& q) const {
    return std::binary_search(elements_.begin(), elements_.end(), q);
}

std::optional<Rational> Alphabet::gamma() const {
    std::optional<Rational> best;
    for (const auto& s : elements_) {
        if (s == 0) {
            continue;
        }
        Rational m = abs(s);
        if (!best || m < *best) {
            best = m;
        }
    }
    return best;
}

// ------------------------------------------------------------ Coefficients

Coefficients::Coefficients(std::vector<Rational> a) : a_(std::move(a)) {
    if (a_.empty()) {
        throw RangeError("coefficient vector must have length >= 1");
    }
}

Coefficients::Coefficients(std::initializer_list<long> a) : Coefficients(from_longs(a)) {}

Coefficients Coefficients::over(const Alphabet& alphabet, std::vector<Rational> a) {
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (!alphabet.contains(a[j])) {
            throw PreconditionError("coefficient a_" + std::to_string(j) + " = " + format_rational(a[j]) +
                                    " is not in the alphabet");
        }
    }
    return Coefficients(std::move(a));
}

std::optional<std::size_t> Coefficients::degree() const {
    for (std::size_t j = a_.size(); j-- > 0;) {
        if (a_[j] != 0) {
            return j;
        }
    }
    return std::nullopt;
}

bool Coefficients::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rational& q) { return q == 0; });
}

// -------------------------------------------------------- CosinePolynomial

CosinePolynomial::CosinePolynomial(std::vector<Rational> c) : c_(std::move(c)) {
    if (c_.empty()) {
        throw RangeError("cosine coefficient vector must have length >= 1");
    }
}

CosinePolynomial::CosinePolynomial(std::initializer_list<long> c) : CosinePolynomial(from_longs(c)) {}

bool CosinePolynomial::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

std::vector<double> CosinePolynomial::to_doubles() const {
    std::vector<double> out;
    out.reserve(c_.size());
    for (const auto& q : c_) {
        out.push_back(q.get_d());
    }
    return out;
}

// -------------------------------------------------------------- statistics

std::size_t nc(const Coefficients& p) {
    const auto v = p.values();
    return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const Rational& q) { return q != 0; }));
}

std::size_t nc_k(const Coefficients& p, std::size_t k) {
    if (k < 1 || k > p.size()) {
        throw RangeError("window length k = " + std::to_string(k) + " outside 1.." + std::to_string(p.size()));
    }
    const auto a = p.values();
    Rational window = 0;
    for (std::size_t j = 0; j < k; ++j) {
        window += a[j];
    }
    std::size_t count = window != 0 ? 1 : 0;
    for (std::size_t u = 1; u + k <= a.size(); ++u) {
        window += a[u + k - 1] - a[u - 1];
        if (window != 0) {
            ++count;
        }
    }
    return count;
}

bool is_self_reciprocal(const Coefficients& p) {
    const auto a = p.values();
    const std::size_t n = p.declared_degree();
    for (std::size_t j = 0; j <= n; ++j) {
        if (a[j] != a[n - j]) {
            return false;
        }
    }
    return true;
}

bool is_skew_reciprocal(const Coefficients& p) {
    const auto a = p.values();
    const std::size_t n = p.declared_degree();
    for (std::size_t j = 0; j <= n; ++j) {
        const Rational rhs = (j % 2 == 0) ? a[n - j] : Rational(-a[n - j]);
        if (a[j] != rhs) {
            return false;
        }
    }
    return true;
}

// ------------------------------------------------------ number theory

bool is_prime(std::int64_t n) {
    if (n < 2) {
        return false;
    }
    if (n % 2 == 0) {
        return n == 2;
    }
    for (std::int64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

namespace {

void require_odd_prime(std::int64_t p) {
    if (p <= 2 || p > kMaxPrime || !is_prime(p)) {
        throw DomainError("legendre_symbol needs an odd prime <= 10^7, got " + std::to_string(p));
    }
}

int euler_criterion(std::int64_t k, std::int64_t p) {
    const std::int64_t r = ((k % p) + p) % p;
    if (r == 0) {
        return 0;
    }
    const auto up = static_cast<std::uint64_t>(p);
    const std::uint64_t e = pow_mod(static_cast<std::uint64_t>(r), (up - 1) / 2, up);
    return e == 1 ? 1 : -1;
}

} // namespace

int legendre_symbol(std::int64_t k, std::int64_t p) {
    require_odd_prime(p);
    return euler_criterion(k, p);
}

Coefficients fekete(std::int64_t p) {
    require_odd_prime(p);
    std::vector<Rational> a;
    a.reserve(static_cast<std::size_t>(p));
    for (std::int64_t k = 0; k < p; ++k) {
        a.emplace_back(euler_criterion(k, p));
    }
    return Coefficients(std::move(a));
}

CosinePolynomial counterexample_family(std::int64_t n) {
    if (n < 1) {
        throw RangeError("counterexample_family needs n >= 1, got " + std::to_string(n));
    }
    const auto top = static_cast<std::size_t>(4 * n + 1);
    std::vector<Rational> c(top + 1);
    c[1] += 1;   // cos t
    c[top] += 1; // cos((4n+1)t)
    for (std::int64_t k = 0; k < n; ++k) {
        c[static_cast<std::size_t>(4 * k + 1)] += 1;
        c[static_cast<std::size_t>(4 * k + 3)] -= 1;
    }
    return CosinePolynomial(std::move(c));
}

bool alphabet_has_property_2_6(const Alphabet& s) {
    bool has_positive = false;
    bool has_negative = false;
    for (const auto& x : s.elements()) {
        has_positive = has_positive || x > 0;
        has_negative = has_negative || x < 0;
    }
    return !(has_positive && has_negative);
}

RootOfUnityWitness verify_lemma_3_10(std::span<const Rational> b) {
    const std::size_t k = b.size();
    if (k == 0) {
        throw PreconditionError("verify_lemma_3_10 needs k >= 1 coefficients");
    }
    for (std::size_t m = 0; m < k; ++m) {
        if (b[m] == 0) {
            throw PreconditionError("verify_lemma_3_10: b_" + std::to_string(m) + " is zero");
        }
    }

    std::vector<double> bd(k);
    std::transform(b.begin(), b.end(), bd.begin(), [](const Rational& q) { return q.get_d(); });
    for (std::size_t j = 0; j < k; ++j) {
        double re = 0.0;
        for (std::size_t m = 0; m < k; ++m) {
            const std::size_t r = (j * m) % k;
            re += bd[m] * std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(k));
        }
        if (std::abs(re) > 1e-9) {
            return {j, RootOfUnityMethod::floating};
        }
    }

    if (k == 1 || k == 2 || k == 3 || k == 4 || k == 6) {
        for (std::size_t j = 0; j < k; ++j) {
            Rational re = 0;
            for (std::size_t m = 0; m < k; ++m) {
                re += b[m] * cos_twelfths((12 / k) * ((j * m) % k));
            }
            if (re != 0) {
                return {j, RootOfUnityMethod::exact};
            }
        }
    }
    return {std::nullopt, RootOfUnityMethod::inconclusive};
}

// -------------------------------------------------------------- families

SelfReciprocalLittlewood::SelfReciprocalLittlewood(std::size_t n) : n_(n) {
    if (n < 1) {
        throw RangeError("self-reciprocal Littlewood family needs n >= 1");
    }
    if (free_count() > 63) {
        throw CapacityError("self-reciprocal Littlewood family too large to index (n = " + std::to_string(n) + ")");
    }
}

std::uint64_t SelfReciprocalLittlewood::size() const noexcept { return std::uint64_t{1} << free_count(); }

Coefficients SelfReciprocalLittlewood::at(std::uint64_t index) const {
    const std::size_t f = free_count();
    std::vector<Rational> a(n_ + 1);
    for (std::size_t j = 0; j < f; ++j) {
        const bool minus = (index >> (f - 1 - j)) & 1U;
        a[j] = minus ? -1 : 1;
        a[n_ - j] = a[j];
    }
    return Coefficients(std::move(a));
}

SkewReciprocalLittlewood::SkewReciprocalLittlewood(std::size_t n) : n_(n) {
    if (n < 1) {
        throw RangeError("skew-reciprocal Littlewood family needs n >= 1");
    }
    if (n / 2 + 1 > 63) {
        throw CapacityError("skew-reciprocal Littlewood family too large to index (n = " + std::to_string(n) + ")");
    }
}

std::uint64_t SkewReciprocalLittlewood::size() const noexcept {
    return n_ % 4 == 0 ? std::uint64_t{1} << (n_ / 2 + 1) : 0;
}

Coefficients SkewReciprocalLittlewood::at(std::uint64_t index) const {
    if (index >= size()) {
        throw RangeError("skew-reciprocal index out of range");
    }
    const std::size_t f = n_ / 2 + 1;
    std::vector<Rational> a(n_ + 1);
    for (std::size_t j = 0; j < f; ++j) {
        const bool minus = (index >> (f - 1 - j)) & 1U;
        a[j] = minus ? -1 : 1;
        a[n_ - j] = (j % 2 == 0) ? a[j] : Rational(-a[j]);
    }
    return Coefficients(std::move(a));
}

std::vector<Coefficients> enumerate_self_reciprocal_littlewood(std::size_t n) {
    const SelfReciprocalLittlewood family(n);
    std::vector<Coefficients> out;
    out.reserve(family.size());
    family.for_each(0, family.size(), [&](std::uint64_t, Coefficients p) { out.push_back(std::move(p)); });
    return out;
}

std::vector<Coefficients> enumerate_skew_reciprocal_littlewood(std::size_t n) {
    const SkewReciprocalLittlewood family(n);
    std::vector<Coefficients> out;
    out.reserve(family.size());
    family.for_each(0, family.size(), [&](std::uint64_t, Coefficients p) { out.push_back(std::move(p)); });
    return out;
}

// ---------------------------------------------------------- serialization

nlohmann::json to_json(const Coefficients& p) {
    return {{"degree", p.declared_degree()}, {"coeffs", to_strings(p.values())}};
}

nlohmann::json to_json(const CosinePolynomial& c) {
    return {{"degree", c.degree()}, {"coeffs", to_strings(c.values())}};
}

Coefficients coefficients_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array()) {
        throw FormatError("polynomial JSON needs an object with a \"coeffs\" array", 0);
    }
    std::vector<Rational> a;
    const auto& arr = j.at("coeffs");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& e = arr[i];
        if (e.is_string()) {
            try {
                a.push_back(parse_rational(e.get<std::string>()));
            } catch (const FormatError& err) {
                throw FormatError("coefficient " + std::to_string(i) + ": " + err.reason(), i);
            }
        } else if (e.is_number_integer()) {
            a.emplace_back(Integer(std::to_string(e.get<long long>())));
        } else {
            throw FormatError("coefficient " + std::to_string(i) + " must be a string or an integer", i);
        }
    }
    if (a.empty()) {
        throw FormatError("empty \"coeffs\" array", 0);
    }
    if (j.contains("degree")) {
        if (!j.at("degree").is_number_unsigned() || j.at("degree").get<std::size_t>() + 1 != a.size()) {
            throw FormatError("\"degree\" must equal len(coeffs) - 1", 0);
        }
    }
    return Coefficients(std::move(a));
}

std::vector<Rational> parse_coefficient_list(std::string_view text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    std::size_t position = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
        try {
            out.push_back(parse_rational(text.substr(start, end - start)));
        } catch (const FormatError& err) {
            throw FormatError("malformed coefficient #" + std::to_string(position) + ": " + err.reason(),
                              start + err.offset());
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
        ++position;
    }
    return out;
}

} // namespace ul
