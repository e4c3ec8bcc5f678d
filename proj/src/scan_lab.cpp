#include "unimodular/scan_lab.hpp"

#include "unimodular/errors.hpp"
#include "unimodular/random.hpp"
#include "unimodular/transforms.hpp"
#include "unimodular/zero_count.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

namespace ul {

namespace {

// Everything needed to regenerate member `pos` of a scan.
struct ScanPlan {
    Family family = Family::self_reciprocal_littlewood;
    std::size_t n = 0;
    bool exhaustive = true;
    std::uint64_t seed = 0;
    std::uint64_t sample_count = 0;
    std::optional<Alphabet> alphabet;
    std::size_t exact_degree_limit = 512;

    std::uint64_t base = 2;   // digit range per free coefficient
    std::size_t free = 0;     // number of free coefficients
    std::uint64_t raw_total = 0; // exhaustive index range (includes the skipped zero member)

    std::uint64_t end() const { return exhaustive ? raw_total : sample_count; }
};

struct Partial {
    std::map<std::size_t, std::uint64_t> histogram;
    std::optional<std::size_t> best_nz;
    std::uint64_t best_pos = 0;
    std::vector<std::uint64_t> best_digits;
};

// base^exp, saturating at cap + 1.
std::uint64_t bounded_power(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (v > cap / base) {
            return cap + 1;
        }
        v *= base;
    }
    return v;
}

constexpr std::uint64_t kRawLimit = std::uint64_t{1} << 62;

void plan_shape(ScanPlan& plan) {
    switch (plan.family) {
    case Family::self_reciprocal_littlewood:
        plan.base = 2;
        plan.free = plan.n / 2 + 1;
        break;
    case Family::skew_reciprocal_littlewood:
        plan.base = 2;
        plan.free = plan.n % 4 == 0 ? plan.n / 2 + 1 : 0;
        break;
    case Family::custom_alphabet:
        if (!plan.alphabet) {
            throw PreconditionError("custom-alphabet scans need an alphabet");
        }
        plan.base = plan.alphabet->size();
        plan.free = plan.n / 2 + 1;
        break;
    case Family::fekete:
        if (plan.n < 3 || !is_prime(static_cast<std::int64_t>(plan.n))) {
            throw PreconditionError("fekete scans need an odd prime degree parameter p");
        }
        plan.base = 1;
        plan.free = 0;
        break;
    case Family::periodic_tail:
        throw PreconditionError("periodic-tail runs through periodic_tail_experiment, not scan_family");
    }
    if (plan.family == Family::skew_reciprocal_littlewood && plan.free == 0) {
        plan.raw_total = 0;
    } else if (plan.family == Family::fekete) {
        plan.raw_total = 1;
    } else {
        plan.raw_total = bounded_power(plan.base, plan.free, kRawLimit);
    }
}

std::vector<std::uint64_t> digits_of(const ScanPlan& plan, std::uint64_t pos) {
    std::vector<std::uint64_t> d(plan.free);
    if (plan.exhaustive) {
        for (std::size_t j = plan.free; j-- > 0;) {
            d[j] = pos % plan.base;
            pos /= plan.base;
        }
    } else {
        const CounterRng rng(plan.seed);
        for (std::size_t j = 0; j < plan.free; ++j) {
            d[j] = rng.below(pos * plan.free + j, plan.base);
        }
    }
    return d;
}

// Empty optional for the skipped zero member of a custom alphabet.
std::optional<Coefficients> member(const ScanPlan& plan, const std::vector<std::uint64_t>& d) {
    const std::size_t n = plan.n;
    if (plan.family == Family::fekete) {
        return fekete(static_cast<std::int64_t>(n));
    }
    std::vector<Rational> a(n + 1);
    bool nonzero = false;
    for (std::size_t j = 0; j < plan.free; ++j) {
        Rational v;
        if (plan.family == Family::custom_alphabet) {
            v = plan.alphabet->elements()[d[j]];
        } else {
            v = d[j] == 0 ? 1 : -1;
        }
        nonzero = nonzero || v != 0;
        a[j] = v;
        if (plan.family == Family::skew_reciprocal_littlewood && j % 2 == 1) {
            a[n - j] = -v;
        } else {
            a[n - j] = v;
        }
    }
    if (!nonzero) {
        return std::nullopt;
    }
    return Coefficients(std::move(a));
}

std::size_t member_nz(const ScanPlan& plan, const Coefficients& p) {
    if (plan.family == Family::fekete || p.declared_degree() <= plan.exact_degree_limit) {
        return nz_unit_circle(p).total_with_multiplicity;
    }
    if (plan.family == Family::skew_reciprocal_littlewood) {
        // P(-z) is self-reciprocal when 4 | n; zeros move by a half turn
        std::vector<Rational> q(p.values().begin(), p.values().end());
        for (std::size_t j = 1; j < q.size(); j += 2) {
            q[j] = -q[j];
        }
        return nz_unit_circle_float(Coefficients(std::move(q))).total_with_multiplicity;
    }
    return nz_unit_circle_float(p).total_with_multiplicity;
}

bool better(const ScanPlan& plan, std::size_t nz, std::uint64_t pos, const std::vector<std::uint64_t>& digits,
            const Partial& cur) {
    if (!cur.best_nz || nz < *cur.best_nz) {
        return true;
    }
    if (nz > *cur.best_nz) {
        return false;
    }
    if (plan.exhaustive) {
        return pos < cur.best_pos;
    }
    if (digits != cur.best_digits) {
        return digits < cur.best_digits;
    }
    return pos < cur.best_pos;
}

void absorb(const ScanPlan& plan, Partial& into, const Partial& from) {
    for (const auto& [k, c] : from.histogram) {
        into.histogram[k] += c;
    }
    if (from.best_nz && better(plan, *from.best_nz, from.best_pos, from.best_digits, into)) {
        into.best_nz = from.best_nz;
        into.best_pos = from.best_pos;
        into.best_digits = from.best_digits;
    }
}

Partial run_range(const ScanPlan& plan, std::uint64_t begin, std::uint64_t end) {
    Partial out;
    for (std::uint64_t pos = begin; pos < end; ++pos) {
        std::vector<std::uint64_t> d = digits_of(plan, pos);
        const auto p = member(plan, d);
        if (!p) {
            continue;
        }
        const std::size_t nz = member_nz(plan, *p);
        ++out.histogram[nz];
        if (better(plan, nz, pos, d, out)) {
            out.best_nz = nz;
            out.best_pos = pos;
            out.best_digits = std::move(d);
        }
    }
    return out;
}

Partial run_parallel(const ScanPlan& plan, std::uint64_t begin, std::uint64_t end, unsigned workers) {
    const std::uint64_t span = end > begin ? end - begin : 0;
    const std::uint64_t w = std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, span));
    std::vector<Partial> parts(w);
    if (w == 1) {
        parts[0] = run_range(plan, begin, end);
    } else {
        std::vector<std::exception_ptr> errors(w);
        std::vector<std::thread> threads;
        for (std::uint64_t i = 0; i < w; ++i) {
            const std::uint64_t lo = begin + span * i / w;
            const std::uint64_t hi = begin + span * (i + 1) / w;
            threads.emplace_back([&, i, lo, hi] {
                try {
                    parts[i] = run_range(plan, lo, hi);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            });
        }
        for (auto& t : threads) {
            t.join();
        }
        for (const auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }
    Partial merged;
    for (const auto& p : parts) {
        absorb(plan, merged, p);
    }
    return merged;
}

nlohmann::json histogram_json(const std::map<std::size_t, std::uint64_t>& h) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [k, c] : h) {
        out.push_back({k, c});
    }
    return out;
}

nlohmann::json checkpoint_json(const ScanPlan& plan, std::uint64_t next_index, const Partial& state) {
    nlohmann::json alphabet = nullptr;
    if (plan.alphabet) {
        alphabet = nlohmann::json::array();
        for (const auto& q : plan.alphabet->elements()) {
            alphabet.push_back(format_rational(q));
        }
    }
    return {{"family", to_string(plan.family)},
            {"n", plan.n},
            {"next_index", next_index},
            {"partial_histogram", histogram_json(state.histogram)},
            {"seed", plan.seed},
            {"mode", plan.exhaustive ? "exhaustive" : "sample"},
            {"sample_count", plan.sample_count},
            {"argmin_index", state.best_nz ? nlohmann::json(state.best_pos) : nlohmann::json(nullptr)},
            {"alphabet", alphabet},
            {"exact_degree_limit", plan.exact_degree_limit}};
}

void write_atomically(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write checkpoint " + tmp);
        }
        out << text;
        if (!out.flush()) {
            throw Error("cannot write checkpoint " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw Error("cannot move checkpoint into place at " + path);
    }
}

ScanRecord execute(const ScanPlan& plan, std::uint64_t start, Partial state, const ScanOptions& options) {
    const std::uint64_t total = plan.end();
    std::uint64_t stop = total;
    if (options.limit > 0 && start < total && total - start > options.limit) {
        stop = start + options.limit;
    }
    if (start < stop) {
        absorb(plan, state, run_parallel(plan, start, stop, std::max(1u, options.workers)));
    }
    const std::uint64_t next = std::max(start, stop);

    ScanRecord r;
    r.family = plan.family;
    r.degree = plan.n;
    r.exhaustive = plan.exhaustive;
    r.complete = next >= total;
    r.seed = plan.seed;
    r.sample_count = plan.sample_count;
    r.histogram = state.histogram;
    Integer weighted = 0;
    for (const auto& [k, c] : state.histogram) {
        r.population += c;
        weighted += Integer(static_cast<unsigned long>(k)) * Integer(static_cast<unsigned long>(c));
    }
    if (state.best_nz) {
        r.min_nz = state.best_nz;
        r.argmin_index = state.best_pos;
        r.argmin = member(plan, digits_of(plan, state.best_pos));
    }
    if (r.population > 0) {
        Rational mean(weighted, Integer(static_cast<unsigned long>(r.population)));
        mean.canonicalize();
        r.mean_nz = mean;
    }
    r.checkpoint = checkpoint_json(plan, next, state);
    if (!options.checkpoint_path.empty()) {
        write_atomically(options.checkpoint_path, r.checkpoint.dump() + "\n");
    }
    return r;
}

[[noreturn]] void bad_checkpoint(const std::string& why, std::size_t offset = 0) {
    throw FormatError("checkpoint: " + why, offset);
}

} // namespace

const char* to_string(Family f) {
    switch (f) {
    case Family::self_reciprocal_littlewood:
        return "self-reciprocal-littlewood";
    case Family::skew_reciprocal_littlewood:
        return "skew-reciprocal-littlewood";
    case Family::fekete:
        return "fekete";
    case Family::periodic_tail:
        return "periodic-tail";
    case Family::custom_alphabet:
        return "custom-alphabet";
    }
    return "?";
}

Family family_from_string(const std::string& s) {
    if (s == "srl" || s == "self-reciprocal-littlewood") {
        return Family::self_reciprocal_littlewood;
    }
    if (s == "skew" || s == "skew-reciprocal-littlewood") {
        return Family::skew_reciprocal_littlewood;
    }
    if (s == "fekete") {
        return Family::fekete;
    }
    if (s == "periodic-tail") {
        return Family::periodic_tail;
    }
    if (s == "custom-alphabet") {
        return Family::custom_alphabet;
    }
    throw DomainError("unknown family '" + s + "'");
}

std::uint64_t family_population(Family f, std::size_t n, const std::optional<Alphabet>& alphabet) {
    ScanPlan plan;
    plan.family = f;
    plan.n = n;
    plan.alphabet = alphabet;
    plan_shape(plan);
    if (f == Family::custom_alphabet && plan.alphabet->contains(Rational(0)) && plan.raw_total > 0) {
        return plan.raw_total - 1;
    }
    return plan.raw_total;
}

ScanRecord scan_family(Family family, std::size_t n, const ScanMode& mode, const ScanOptions& options) {
    ScanPlan plan;
    plan.family = family;
    plan.n = n;
    plan.exhaustive = mode.exhaustive;
    plan.seed = mode.seed;
    plan.sample_count = mode.exhaustive ? 0 : mode.sample_count;
    plan.alphabet = options.alphabet;
    plan.exact_degree_limit = options.exact_degree_limit;
    plan_shape(plan);
    if (plan.exhaustive && plan.raw_total > kExhaustiveCap) {
        throw CapacityError(std::string(to_string(family)) + " at degree " + std::to_string(n) +
                            " is too large for an exhaustive scan; use sample mode");
    }
    return execute(plan, 0, Partial{}, options);
}

ScanRecord resume(const std::string& checkpoint_file, const ScanOptions& options, std::optional<Family> expected) {
    std::ifstream in(checkpoint_file, std::ios::binary);
    if (!in) {
        throw Error("cannot open checkpoint " + checkpoint_file);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        bad_checkpoint(e.what(), e.byte);
    }
    if (!j.is_object()) {
        bad_checkpoint("top level is not an object");
    }
    auto need = [&](const char* key) -> const nlohmann::json& {
        if (!j.contains(key)) {
            bad_checkpoint(std::string("missing field '") + key + "'");
        }
        return j.at(key);
    };
    ScanPlan plan;
    try {
        const auto& fam = need("family");
        if (!fam.is_string()) {
            bad_checkpoint("family is not a string");
        }
        try {
            plan.family = family_from_string(fam.get<std::string>());
        } catch (const DomainError&) {
            bad_checkpoint("unknown family tag " + fam.dump());
        }
        if (expected && *expected != plan.family) {
            bad_checkpoint(std::string("family tag '") + to_string(plan.family) + "' does not match '" +
                           to_string(*expected) + "'");
        }
        plan.n = need("n").get<std::size_t>();
        plan.seed = need("seed").get<std::uint64_t>();
        const std::string mode = need("mode").get<std::string>();
        if (mode != "exhaustive" && mode != "sample") {
            bad_checkpoint("unknown mode '" + mode + "'");
        }
        plan.exhaustive = mode == "exhaustive";
        plan.sample_count = need("sample_count").get<std::uint64_t>();
        plan.exact_degree_limit = need("exact_degree_limit").get<std::size_t>();
        const auto& alphabet = need("alphabet");
        if (!alphabet.is_null()) {
            std::vector<Rational> elements;
            for (const auto& e : alphabet) {
                elements.push_back(parse_rational(e.get<std::string>()));
            }
            plan.alphabet = Alphabet(std::move(elements));
        }
        plan_shape(plan);

        Partial state;
        for (const auto& pair : need("partial_histogram")) {
            if (!pair.is_array() || pair.size() != 2) {
                bad_checkpoint("histogram entries must be [nz, count] pairs");
            }
            state.histogram[pair[0].get<std::size_t>()] += pair[1].get<std::uint64_t>();
        }
        const auto& am = need("argmin_index");
        if (!am.is_null()) {
            state.best_pos = am.get<std::uint64_t>();
            state.best_digits = digits_of(plan, state.best_pos);
            const auto p = member(plan, state.best_digits);
            if (!p) {
                bad_checkpoint("argmin_index points at the skipped zero member");
            }
            state.best_nz = member_nz(plan, *p);
        } else if (!state.histogram.empty()) {
            bad_checkpoint("nonempty histogram without argmin_index");
        }
        const std::uint64_t next = need("next_index").get<std::uint64_t>();
        if (next > plan.end()) {
            bad_checkpoint("next_index beyond the end of the scan");
        }
        ScanOptions opts = options;
        if (opts.checkpoint_path.empty()) {
            opts.checkpoint_path = checkpoint_file;
        }
        return execute(plan, next, std::move(state), opts);
    } catch (const nlohmann::json::exception& e) {
        bad_checkpoint(e.what());
    } catch (const PreconditionError& e) {
        bad_checkpoint(e.what());
    }
}

nlohmann::json to_json(const ScanRecord& r) {
    return {{"family", to_string(r.family)},
            {"degree", r.degree},
            {"population", r.population},
            {"min_nz", r.min_nz ? nlohmann::json(*r.min_nz) : nlohmann::json(nullptr)},
            {"argmin", r.argmin ? to_json(*r.argmin) : nlohmann::json(nullptr)},
            {"argmin_index", r.argmin_index ? nlohmann::json(*r.argmin_index) : nlohmann::json(nullptr)},
            {"mean_nz", r.mean_nz ? nlohmann::json(format_rational(*r.mean_nz)) : nlohmann::json(nullptr)},
            {"histogram", histogram_json(r.histogram)},
            {"exhaustive", r.exhaustive},
            {"complete", r.complete},
            {"seed", r.seed},
            {"sample_count", r.sample_count},
            {"checkpoint", r.checkpoint}};
}

std::string csv_header() {
    return "family,degree,population,min_nz,mean_nz,exhaustive,complete,seed,sample_count,argmin_index,argmin,histogram";
}

std::string to_csv_row(const ScanRecord& r) {
    std::ostringstream out;
    out << to_string(r.family) << ',' << r.degree << ',' << r.population << ',';
    if (r.min_nz) {
        out << *r.min_nz;
    }
    out << ',' << (r.mean_nz ? format_rational(*r.mean_nz) : "") << ',' << (r.exhaustive ? "true" : "false") << ','
        << (r.complete ? "true" : "false") << ',' << r.seed << ',' << r.sample_count << ',';
    if (r.argmin_index) {
        out << *r.argmin_index;
    }
    out << ',';
    if (r.argmin) {
        const auto a = r.argmin->values();
        for (std::size_t i = 0; i < a.size(); ++i) {
            out << (i ? ";" : "") << format_rational(a[i]);
        }
    }
    out << ',';
    bool first = true;
    for (const auto& [k, c] : r.histogram) {
        out << (first ? "" : ";") << k << ':' << c;
        first = false;
    }
    return out.str();
}

Coefficients random_self_reciprocal_littlewood(std::uint64_t seed, std::uint64_t index, std::size_t min_degree,
                                               std::size_t max_degree) {
    if (min_degree > max_degree) {
        throw RangeError("min_degree exceeds max_degree");
    }
    RngStream rng(seed, index << 20);
    const std::size_t n = min_degree + static_cast<std::size_t>(rng.below(max_degree - min_degree + 1));
    std::vector<Rational> a(n + 1);
    for (std::size_t j = 0; j <= n / 2; ++j) {
        const long v = rng.below(2) == 0 ? 1 : -1;
        a[j] = v;
        a[n - j] = v;
    }
    return Coefficients(std::move(a));
}

std::vector<QuarterRow> average_vs_quarter_n(const std::vector<std::size_t>& n_list, unsigned workers) {
    std::vector<QuarterRow> rows;
    ScanOptions opts;
    opts.workers = workers;
    for (std::size_t n : n_list) {
        const ScanRecord r = scan_family(Family::self_reciprocal_littlewood, n, ScanMode::all(), opts);
        QuarterRow row;
        row.n = n;
        row.mean_nz = r.mean_nz.value_or(Rational(0));
        row.quarter_n = Rational(static_cast<long>(n), 4);
        row.quarter_n.canonicalize();
        row.pass = r.mean_nz.has_value() && row.mean_nz >= row.quarter_n;
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json to_json(const QuarterRow& r) {
    return {{"n", r.n},
            {"mean_nz", format_rational(r.mean_nz)},
            {"quarter_n", format_rational(r.quarter_n)},
            {"pass", r.pass}};
}

std::vector<NcRow> nck_vs_nz(const std::vector<Coefficients>& members, std::size_t k_max) {
    std::vector<NcRow> rows;
    for (std::size_t i = 0; i < members.size(); ++i) {
        NcRow row;
        row.polynomial_id = i;
        for (std::size_t k = 1; k <= k_max; ++k) {
            row.nc.push_back(nc_k(members[i], k));
        }
        row.nz = nz_unit_circle(members[i]).total_with_multiplicity;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<NcRow> nck_vs_nz(Family family, std::size_t n, std::size_t k_max, const std::optional<Alphabet>& alphabet) {
    if (n % 2 != 0) {
        throw PreconditionError("nck_vs_nz needs an even degree");
    }
    if (family != Family::self_reciprocal_littlewood && family != Family::custom_alphabet) {
        throw PreconditionError("nck_vs_nz needs a self-reciprocal family");
    }
    ScanPlan plan;
    plan.family = family;
    plan.n = n;
    plan.alphabet = alphabet;
    plan_shape(plan);
    if (plan.raw_total > kExhaustiveCap) {
        throw CapacityError("family too large for an exhaustive NC_k table");
    }
    std::vector<NcRow> rows;
    for (std::uint64_t pos = 0; pos < plan.raw_total; ++pos) {
        const auto p = member(plan, digits_of(plan, pos));
        if (!p) {
            continue;
        }
        NcRow row;
        row.polynomial_id = pos;
        for (std::size_t k = 1; k <= k_max; ++k) {
            row.nc.push_back(nc_k(*p, k));
        }
        row.nz = nz_unit_circle(*p).total_with_multiplicity;
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json to_json(const NcRow& r) { return {{"polynomial_id", r.polynomial_id}, {"nc", r.nc}, {"nz", r.nz}}; }

PeriodicResult periodic_tail_experiment(const std::vector<Rational>& prefix, const std::vector<Rational>& block,
                                        const std::vector<std::size_t>& n_list) {
    if (block.empty()) {
        throw PreconditionError("periodic block must be nonempty");
    }
    for (const auto& b : block) {
        if (b == 0) {
            throw PreconditionError("periodic block entries must be nonzero");
        }
    }
    if (prefix.size() % block.size() != 0) {
        throw PreconditionError("prefix length must be a multiple of the block length");
    }
    if (n_list.size() < 2) {
        throw PreconditionError("periodic_tail_experiment needs at least two degrees");
    }
    const auto [lo, hi] = std::minmax_element(n_list.begin(), n_list.end());
    if (*lo == 0 || *hi < 8 * *lo) {
        throw PreconditionError("degrees must span at least a factor of 8");
    }
    PeriodicResult out;
    const std::size_t m = prefix.size();
    for (std::size_t n : n_list) {
        std::vector<Rational> a(n + 1);
        for (std::size_t j = 0; j <= n; ++j) {
            a[j] = j < m ? prefix[j] : block[(j - m) % block.size()];
        }
        out.rows.push_back({n, count_period_zeros(CosinePolynomial(std::move(a))).total_with_multiplicity});
    }
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& r : out.rows) {
        sx += static_cast<double>(r.n);
        sy += static_cast<double>(r.nz);
    }
    const double k = static_cast<double>(out.rows.size());
    const double mx = sx / k;
    const double my = sy / k;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& r : out.rows) {
        const double dx = static_cast<double>(r.n) - mx;
        sxx += dx * dx;
        sxy += dx * (static_cast<double>(r.nz) - my);
    }
    out.alpha = sxy / sxx;
    out.beta = my - out.alpha * mx;
    out.pass = out.alpha > 0.0;
    return out;
}

nlohmann::json to_json(const PeriodicResult& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"n", row.n}, {"nz", row.nz}});
    }
    return {{"rows", rows}, {"alpha", round12(r.alpha)}, {"beta", round12(r.beta)}, {"pass", r.pass}};
}

std::vector<FeketeRow> fekete_density(const std::vector<std::int64_t>& p_list) {
    for (std::int64_t p : p_list) {
        if (p < 3 || p > 5000 || !is_prime(p)) {
            throw PreconditionError("fekete_density needs odd primes up to 5000, got " + std::to_string(p));
        }
    }
    std::vector<FeketeRow> rows;
    for (std::int64_t p : p_list) {
        FeketeRow row;
        row.p = p;
        row.nz = nz_unit_circle(fekete(p)).total_with_multiplicity;
        row.ratio = static_cast<double>(row.nz) / static_cast<double>(p);
        if (p >= 101) {
            row.in_band = row.ratio >= kFeketeBandLow && row.ratio <= kFeketeBandHigh;
        }
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json to_json(const FeketeRow& r) {
    return {{"p", r.p},
            {"nz", r.nz},
            {"ratio", round12(r.ratio)},
            {"band", {kFeketeBandLow, kFeketeBandHigh}},
            {"band_note", "engineering tolerance, checked for p >= 101"},
            {"pass", r.in_band ? nlohmann::json(*r.in_band) : nlohmann::json(nullptr)}};
}

} // namespace ul
