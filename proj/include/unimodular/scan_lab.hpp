#pragma once

#include "unimodular/poly_core.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ul {

enum class Family { self_reciprocal_littlewood, skew_reciprocal_littlewood, fekete, periodic_tail, custom_alphabet };

const char* to_string(Family f);
/// Accepts the full tags and the short CLI names srl, skew, fekete.
Family family_from_string(const std::string& s);

struct ScanMode {
    bool exhaustive = true;
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 0;

    static ScanMode all() { return {}; }
    static ScanMode sample(std::uint64_t count, std::uint64_t seed) { return {false, count, seed}; }
};

inline constexpr std::uint64_t kExhaustiveCap = std::uint64_t{1} << 26;

struct ScanOptions {
    unsigned workers = 1;
    /// Stop after this many members and write a checkpoint (0 = run to the end).
    std::uint64_t limit = 0;
    std::string checkpoint_path;
    /// Required for Family::custom_alphabet: members are self-reciprocal with
    /// free coefficients a_0..a_{n/2} drawn from it; the zero polynomial is skipped.
    std::optional<Alphabet> alphabet;
    /// Members above this degree use the floating screen.
    std::size_t exact_degree_limit = 512;
};

struct ScanRecord {
    Family family = Family::self_reciprocal_littlewood;
    std::size_t degree = 0;
    std::uint64_t population = 0;
    std::optional<std::size_t> min_nz;
    std::optional<Coefficients> argmin;
    std::optional<std::uint64_t> argmin_index;
    std::optional<Rational> mean_nz;
    std::map<std::size_t, std::uint64_t> histogram;
    bool exhaustive = true;
    bool complete = true;
    std::uint64_t seed = 0;
    std::uint64_t sample_count = 0;
    /// Resume token; same layout as the checkpoint file.
    nlohmann::json checkpoint;
};

/// Size of the family at degree n (exhaustive population).
std::uint64_t family_population(Family f, std::size_t n, const std::optional<Alphabet>& alphabet = std::nullopt);

/// Throws CapacityError when an exhaustive population exceeds kExhaustiveCap,
/// PreconditionError for Family::periodic_tail or a missing alphabet.
ScanRecord scan_family(Family family, std::size_t n, const ScanMode& mode, const ScanOptions& options = {});

/// Throws FormatError (with a byte offset for parse failures) on a corrupt or
/// incompatible checkpoint, including a family tag other than `expected`.
/// Continues writing to the same checkpoint file unless options name another.
ScanRecord resume(const std::string& checkpoint_file, const ScanOptions& options = {},
                  std::optional<Family> expected = std::nullopt);

nlohmann::json to_json(const ScanRecord& r);
std::string csv_header();
std::string to_csv_row(const ScanRecord& r);

/// Instance `index` of a seeded stream of self-reciprocal Littlewood
/// polynomials: degree uniform in [min_degree, max_degree], then a uniform
/// member. Drawn from RngStream(seed, index << 20).
Coefficients random_self_reciprocal_littlewood(std::uint64_t seed, std::uint64_t index, std::size_t min_degree,
                                               std::size_t max_degree);

struct QuarterRow {
    std::size_t n = 0;
    Rational mean_nz;
    Rational quarter_n;
    bool pass = false;
};

std::vector<QuarterRow> average_vs_quarter_n(const std::vector<std::size_t>& n_list, unsigned workers = 1);
nlohmann::json to_json(const QuarterRow& r);

struct NcRow {
    std::uint64_t polynomial_id = 0;
    std::vector<std::size_t> nc; ///< NC_1 .. NC_kmax
    std::size_t nz = 0;
};

/// Exhaustive over a self-reciprocal family of even degree n.
std::vector<NcRow> nck_vs_nz(Family family, std::size_t n, std::size_t k_max,
                             const std::optional<Alphabet>& alphabet = std::nullopt);
/// Explicit list; ids are positions in the list.
std::vector<NcRow> nck_vs_nz(const std::vector<Coefficients>& members, std::size_t k_max);
nlohmann::json to_json(const NcRow& r);

struct PeriodicRow {
    std::size_t n = 0;
    std::size_t nz = 0;
};

struct PeriodicResult {
    std::vector<PeriodicRow> rows;
    double alpha = 0.0; ///< least-squares slope of NZ against n
    double beta = 0.0;
    bool pass = false;  ///< alpha > 0
};

/// T_n(t) = sum_{j=0}^{n} a_j cos(jt) with a_j = prefix_j for j < m and
/// a_{m + lk + j} = b_j afterwards. Zeros in [-pi, pi) with multiplicity.
/// Throws PreconditionError for a zero block entry, a prefix length that is not
/// a multiple of k, or an n list spanning less than a factor of 8.
PeriodicResult periodic_tail_experiment(const std::vector<Rational>& prefix, const std::vector<Rational>& block,
                                        const std::vector<std::size_t>& n_list);
nlohmann::json to_json(const PeriodicResult& r);

inline constexpr double kFeketeBandLow = 0.45;
inline constexpr double kFeketeBandHigh = 0.56;

struct FeketeRow {
    std::int64_t p = 0;
    std::size_t nz = 0;
    double ratio = 0.0;          ///< NZ / p
    std::optional<bool> in_band; ///< checked only for p >= 101
};

/// Throws PreconditionError unless every p is an odd prime <= 5000.
std::vector<FeketeRow> fekete_density(const std::vector<std::int64_t>& p_list);
nlohmann::json to_json(const FeketeRow& r);

} // namespace ul
