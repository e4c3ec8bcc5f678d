#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "unimodular/errors.hpp"
#include "unimodular/scan_lab.hpp"
#include "unimodular/zero_count.hpp"

#include <filesystem>
#include <fstream>
#include <algorithm>

using namespace ul;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "ul_scan_tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    fs::remove(p);
    return p;
}

void spit(const fs::path& p, const std::string& s) {
    std::ofstream out(p);
    out << s;
}

} // namespace

TEST_CASE("family tags") {
    CHECK(std::string(to_string(Family::self_reciprocal_littlewood)) == "self-reciprocal-littlewood");
    CHECK(family_from_string("srl") == Family::self_reciprocal_littlewood);
    CHECK(family_from_string("skew") == Family::skew_reciprocal_littlewood);
    CHECK(family_from_string("fekete") == Family::fekete);
    CHECK_THROWS_AS(family_from_string("nope"), DomainError);
}

TEST_CASE("small exhaustive scans") {
    const ScanRecord r3 = scan_family(Family::self_reciprocal_littlewood, 3, ScanMode::all());
    CHECK(r3.population == 4);
    REQUIRE(r3.min_nz);
    CHECK(*r3.min_nz == 3);
    CHECK(*r3.mean_nz == 3);
    CHECK(r3.complete);

    const ScanRecord r1 = scan_family(Family::self_reciprocal_littlewood, 1, ScanMode::all());
    CHECK(*r1.min_nz >= 1);

    const ScanRecord s9 = scan_family(Family::skew_reciprocal_littlewood, 9, ScanMode::all());
    CHECK(s9.population == 0);
    CHECK_FALSE(s9.min_nz);
    CHECK(s9.histogram.empty());

    const ScanRecord s8 = scan_family(Family::skew_reciprocal_littlewood, 8, ScanMode::all());
    CHECK(s8.population == 32);
    CHECK(*s8.min_nz == 0);
    CHECK(s8.histogram.rbegin()->first == 0);
}

TEST_CASE("histogram matches a direct count") {
    const ScanRecord r = scan_family(Family::self_reciprocal_littlewood, 8, ScanMode::all());
    std::map<std::size_t, std::uint64_t> h;
    for (const auto& p : enumerate_self_reciprocal_littlewood(8)) {
        ++h[nz_unit_circle(p).total_with_multiplicity];
    }
    CHECK(r.histogram == h);
    REQUIRE(r.argmin);
    CHECK(nz_unit_circle(*r.argmin).total_with_multiplicity == *r.min_nz);
}

TEST_CASE("worker count does not change the record") {
    const std::string one = to_json(scan_family(Family::self_reciprocal_littlewood, 12, ScanMode::all(), {1})).dump();
    const std::string two = to_json(scan_family(Family::self_reciprocal_littlewood, 12, ScanMode::all(), {2})).dump();
    const std::string eight = to_json(scan_family(Family::self_reciprocal_littlewood, 12, ScanMode::all(), {8})).dump();
    CHECK(one == two);
    CHECK(one == eight);
    const std::string s1 = to_json(scan_family(Family::self_reciprocal_littlewood, 40, ScanMode::sample(64, 9), {1})).dump();
    const std::string s8 = to_json(scan_family(Family::self_reciprocal_littlewood, 40, ScanMode::sample(64, 9), {8})).dump();
    CHECK(s1 == s8);
}

TEST_CASE("checkpoint and resume") {
    const fs::path ck = scratch("n20.json");
    const ScanRecord full = scan_family(Family::self_reciprocal_littlewood, 20, ScanMode::all(), {2});

    ScanOptions opts;
    opts.workers = 2;
    opts.limit = full.population / 2;
    opts.checkpoint_path = ck.string();
    const ScanRecord half = scan_family(Family::self_reciprocal_littlewood, 20, ScanMode::all(), opts);
    CHECK_FALSE(half.complete);
    REQUIRE(fs::exists(ck));

    ScanOptions ropts;
    ropts.workers = 2;
    const ScanRecord resumed = resume(ck.string(), ropts);
    CHECK(resumed.complete);
    CHECK(to_json(resumed) == to_json(full));

    // completed checkpoint resumes straight to the final record
    const ScanRecord again = resume(ck.string(), ropts);
    CHECK(to_json(again) == to_json(full));

    CHECK_THROWS_AS(resume(ck.string(), ropts, Family::skew_reciprocal_littlewood), FormatError);
}

TEST_CASE("corrupt checkpoints") {
    const fs::path bad = scratch("bad.json");
    spit(bad, "{\"family\": \"self-reciprocal-littlewood\", \"n\": ");
    try {
        resume(bad.string());
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.offset() > 0);
    }
    spit(bad, R"({"family": "martian", "n": 4})");
    CHECK_THROWS_AS(resume(bad.string()), FormatError);
    CHECK_THROWS_AS(resume(scratch("missing.json").string()), Error);
}

TEST_CASE("capacity and preconditions") {
    CHECK_THROWS_AS(scan_family(Family::self_reciprocal_littlewood, 60, ScanMode::all()), CapacityError);
    CHECK_THROWS_AS(scan_family(Family::periodic_tail, 10, ScanMode::all()), PreconditionError);
    CHECK_THROWS_AS(scan_family(Family::custom_alphabet, 10, ScanMode::all()), PreconditionError);
}

TEST_CASE("custom alphabet scan skips the zero member") {
    ScanOptions o;
    o.alphabet = Alphabet{-1, 0, 1};
    const ScanRecord r = scan_family(Family::custom_alphabet, 4, ScanMode::all(), o);
    CHECK(r.population == 26);
    CHECK(family_population(Family::custom_alphabet, 4, o.alphabet) == 26);
}

TEST_CASE("fekete family and density rows") {
    const ScanRecord r = scan_family(Family::fekete, 7, ScanMode::all());
    CHECK(r.population == 1);
    const auto rows = fekete_density({3, 5, 101});
    CHECK(rows[0].nz == 1);
    CHECK(rows[0].ratio == doctest::Approx(1.0 / 3));
    CHECK_FALSE(rows[0].in_band);
    REQUIRE(rows[2].in_band);
    CHECK(*rows[2].in_band);
    CHECK_THROWS_AS(fekete_density({9}), PreconditionError);
}

TEST_CASE("average_vs_quarter_n") {
    const auto rows = average_vs_quarter_n({1, 3, 6});
    CHECK(rows[1].mean_nz == 3);
    CHECK(rows[1].quarter_n == Rational(3, 4));
    for (const auto& r : rows) {
        CHECK(r.pass);
    }
}

TEST_CASE("nck_vs_nz") {
    const auto rows = nck_vs_nz({Coefficients{1, 1, 1, 1}, Coefficients{1, -1, 1, -1}}, 2);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].nc == std::vector<std::size_t>{4, 3});
    CHECK(rows[0].nz == 3);
    CHECK(rows[1].nc == std::vector<std::size_t>{4, 0});
    const auto fam = nck_vs_nz(Family::self_reciprocal_littlewood, 6, 3);
    CHECK(fam.size() == 16);
}

TEST_CASE("periodic tail experiment") {
    const std::vector<Rational> one{Rational(1)};
    CHECK_THROWS_AS(periodic_tail_experiment({}, {Rational(0), Rational(1)}, {16, 128}), PreconditionError);
    CHECK_THROWS_AS(periodic_tail_experiment({Rational(1)}, {Rational(1), Rational(-1)}, {16, 128}), PreconditionError);
    CHECK_THROWS_AS(periodic_tail_experiment({}, one, {16, 32}), PreconditionError);
    const PeriodicResult r = periodic_tail_experiment({}, one, {16, 32, 64, 128});
    REQUIRE(r.rows.size() == 4);
    CHECK(r.alpha > 0);
    CHECK(r.pass);
}

TEST_CASE("random self-reciprocal stream") {
    for (std::uint64_t i = 0; i < 30; ++i) {
        const Coefficients p = random_self_reciprocal_littlewood(3, i, 2, 64);
        CHECK(p == random_self_reciprocal_littlewood(3, i, 2, 64));
        CHECK(is_self_reciprocal(p));
        CHECK(p.declared_degree() >= 2);
        CHECK(p.declared_degree() <= 64);
    }
}

TEST_CASE("csv row") {
    const ScanRecord r = scan_family(Family::self_reciprocal_littlewood, 3, ScanMode::all());
    const std::string header = csv_header();
    const std::string row = to_csv_row(r);
    CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));
}
