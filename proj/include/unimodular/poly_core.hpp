#pragma once

#include "unimodular/rational.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ul {

/// Finite, ordered, duplicate-free set of exact rationals.
class Alphabet {
public:
    /// Sorts and validates; throws PreconditionError on empty input or duplicates.
    explicit Alphabet(std::vector<Rational> elements);
    Alphabet(std::initializer_list<long> elements);

    std::span<const Rational> elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool contains(const Rational& q) const;

    /// Smallest modulus among the nonzero elements; empty when the alphabet is {0}.
    std::optional<Rational> gamma() const;

private:
    std::vector<Rational> elements_;
};

/// Coefficient vector a_0..a_n of P(z) = sum a_j z^j. The declared top index n
/// is size() - 1 and is kept even when trailing entries vanish.
class Coefficients {
public:
    Coefficients() : a_(1) {}
    explicit Coefficients(std::vector<Rational> a);
    Coefficients(std::initializer_list<long> a);

    /// Builds a vector whose every entry is checked against `alphabet`.
    static Coefficients over(const Alphabet& alphabet, std::vector<Rational> a);

    std::size_t size() const noexcept { return a_.size(); }
    std::size_t declared_degree() const noexcept { return a_.size() - 1; }
    /// Index of the highest nonzero entry; empty for the zero polynomial.
    std::optional<std::size_t> degree() const;
    bool is_zero() const;

    const Rational& operator[](std::size_t j) const { return a_[j]; }
    std::span<const Rational> values() const noexcept { return a_; }

    friend bool operator==(const Coefficients&, const Coefficients&) = default;

private:
    std::vector<Rational> a_;
};

/// Cosine polynomial T(t) = sum c_j cos(j t).
class CosinePolynomial {
public:
    CosinePolynomial() : c_(1) {}
    explicit CosinePolynomial(std::vector<Rational> c);
    CosinePolynomial(std::initializer_list<long> c);

    std::size_t size() const noexcept { return c_.size(); }
    /// Declared top frequency.
    std::size_t degree() const noexcept { return c_.size() - 1; }
    bool is_zero() const;

    const Rational& operator[](std::size_t j) const { return c_[j]; }
    std::span<const Rational> values() const noexcept { return c_; }
    /// Coefficients rounded to double, for the floating evaluation kernels.
    std::vector<double> to_doubles() const;

    friend bool operator==(const CosinePolynomial&, const CosinePolynomial&) = default;

private:
    std::vector<Rational> c_;
};

std::size_t nc(const Coefficients& p);

/// Number of length-k windows with nonzero sum. Throws RangeError unless 1 <= k <= size.
std::size_t nc_k(const Coefficients& p, std::size_t k);

bool is_self_reciprocal(const Coefficients& p);
bool is_skew_reciprocal(const Coefficients& p);

/// Deterministic trial division.
bool is_prime(std::int64_t n);

/// Legendre symbol (k/p) by Euler's criterion. Throws DomainError unless p is
/// an odd prime no larger than 10^7.
int legendre_symbol(std::int64_t k, std::int64_t p);

/// f_p(z) = sum_{k=0}^{p-1} (k/p) z^k.
Coefficients fekete(std::int64_t p);

/// cos t + cos((4n+1)t) + sum_{k=0}^{n-1} (cos((4k+1)t) - cos((4k+3)t)),
/// accumulated term by term. Throws RangeError for n < 1.
CosinePolynomial counterexample_family(std::int64_t n);

/// True iff no nonempty multiset of nonzero elements sums to zero. Over the
/// rationals this holds exactly when all nonzero elements share one sign.
bool alphabet_has_property_2_6(const Alphabet& s);

enum class RootOfUnityMethod { floating, exact, inconclusive };

struct RootOfUnityWitness {
    std::optional<std::size_t> index;
    RootOfUnityMethod method = RootOfUnityMethod::inconclusive;
};

/// Finds j with Re(sum_m b_m z_j^m) != 0, z_j = exp(2 pi i j / k), k = b.size().
/// Floating values below 1e-9 are treated as zero; when every root falls
/// below the threshold, k in {1,2,3,4,6} is re-evaluated exactly (the real
/// parts of those roots of unity are rational), otherwise the result is
/// inconclusive. Throws PreconditionError if b is empty or has a zero entry.
RootOfUnityWitness verify_lemma_3_10(std::span<const Rational> b);

/// Self-reciprocal Littlewood polynomials of degree n, indexed 0 .. 2^(n/2+1)-1.
/// Index bits select the free prefix a_0..a_{n/2}, a_0 most significant, a
/// clear bit meaning +1; index order is therefore lexicographic with +1 before -1.
class SelfReciprocalLittlewood {
public:
    explicit SelfReciprocalLittlewood(std::size_t n);

    std::size_t degree() const noexcept { return n_; }
    std::size_t free_count() const noexcept { return n_ / 2 + 1; }
    std::uint64_t size() const noexcept;
    Coefficients at(std::uint64_t index) const;

    template <class Fn>
    void for_each(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
        for (std::uint64_t i = begin; i < end; ++i) {
            fn(i, at(i));
        }
    }

private:
    std::size_t n_;
};

/// Littlewood polynomials with a_j = (-1)^j a_{n-j} for every j. The family is
/// empty unless n is a multiple of 4; otherwise the free coefficients are
/// a_0..a_{n/2}, indexed exactly like SelfReciprocalLittlewood.
class SkewReciprocalLittlewood {
public:
    explicit SkewReciprocalLittlewood(std::size_t n);

    std::size_t degree() const noexcept { return n_; }
    std::uint64_t size() const noexcept;
    Coefficients at(std::uint64_t index) const;

    template <class Fn>
    void for_each(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
        for (std::uint64_t i = begin; i < end; ++i) {
            fn(i, at(i));
        }
    }

private:
    std::size_t n_;
};

std::vector<Coefficients> enumerate_self_reciprocal_littlewood(std::size_t n);
std::vector<Coefficients> enumerate_skew_reciprocal_littlewood(std::size_t n);

// JSON interchange: {"degree": n, "coeffs": ["1", "-1/2", ...]}.
nlohmann::json to_json(const Coefficients& p);
Coefficients coefficients_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CosinePolynomial& c);

/// Inline "1,-1,3/2" syntax, index 0 first. FormatError offsets are character
/// positions in `text`.
std::vector<Rational> parse_coefficient_list(std::string_view text);

} // namespace ul
