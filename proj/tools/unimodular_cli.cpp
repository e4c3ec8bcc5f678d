// unimodular: batch front end for zero counting, scans and L1 checks.

#include "unimodular/errors.hpp"
#include "unimodular/l1_bounds.hpp"
#include "unimodular/poly_core.hpp"
#include "unimodular/scan_lab.hpp"
#include "unimodular/transforms.hpp"
#include "unimodular/zero_count.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct Config {
    std::string coeffs;
    std::string file;
    std::string family = "srl";
    std::string n_text;
    bool exhaustive = false;
    std::uint64_t sample = 0;
    std::uint64_t seed = 0;
    bool exact = false;
    bool use_float = false;
    std::size_t grid = 0;
    double tol = 1e-8;
    unsigned workers = 1;
    std::string out;
    std::string format = "jsonl";
    std::optional<double> delta;
    bool check = false;
    std::string checkpoint;
    std::string resume;
    std::uint64_t limit = 0;
    std::string prefix;
    std::string alphabet;
};

struct Output {
    std::vector<json> records;
    std::vector<std::string> csv_lines; // preformatted rows (scan)
    std::string csv_header;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::size_t> parse_n_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size() || v < 0) {
                throw std::invalid_argument(item);
            }
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw UsageError("--n expects nonnegative integers, got '" + item + "'");
        }
    }
    if (out.empty()) {
        throw UsageError("--n is required");
    }
    return out;
}

std::size_t single_n(const Config& c) {
    const auto v = parse_n_list(c.n_text);
    if (v.size() != 1) {
        throw UsageError("--n expects a single value for this command");
    }
    return v[0];
}

std::vector<ul::Rational> read_coefficients(const Config& c) {
    if (!c.coeffs.empty() && !c.file.empty()) {
        throw UsageError("--coeffs and --file are mutually exclusive");
    }
    if (!c.coeffs.empty()) {
        return ul::parse_coefficient_list(c.coeffs);
    }
    if (c.file.empty()) {
        throw UsageError("an input polynomial is required (--coeffs or --file)");
    }
    std::ifstream in(c.file, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open " + c.file);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ul::FormatError(std::string("polynomial file: ") + e.what(), e.byte);
        }
        const auto p = ul::coefficients_from_json(j);
        return {p.values().begin(), p.values().end()};
    }
    auto last = text.find_last_not_of(" \t\r\n");
    return ul::parse_coefficient_list(last == std::string::npos ? std::string_view{} : std::string_view(text).substr(0, last + 1));
}

json zero_record(const ul::ZeroReport& r) {
    json j = ul::to_json(r);
    return j;
}

ul::FloatGridOptions grid_options(const Config& c) {
    ul::FloatGridOptions o;
    o.grid_size = c.grid;
    o.tangency_tol = c.tol;
    return o;
}

void cmd_count(const Config& c, Output& out) {
    const ul::Coefficients p(read_coefficients(c));
    json rec{{"command", "count"}, {"input", ul::to_json(p)}};
    const ul::ZeroReport r = c.use_float ? ul::nz_unit_circle_float(p, grid_options(c)) : ul::nz_unit_circle(p);
    rec.update(zero_record(r));
    if (c.delta) {
        rec["windowed_l1"] = ul::to_json(ul::windowed_l1(p, *c.delta));
        rec["delta"] = ul::round12(*c.delta);
    }
    out.records.push_back(std::move(rec));
}

void cmd_counterexample(const Config& c, Output& out) {
    for (std::size_t n : parse_n_list(c.n_text)) {
        const auto t = ul::counterexample_family(static_cast<std::int64_t>(n));
        const ul::ZeroReport r = c.use_float ? ul::count_period_zeros_float(t, grid_options(c))
                                             : ul::count_period_zeros_exact(t);
        json rec{{"command", "counterexample"}, {"n", n}};
        rec.update(zero_record(r));
        if (c.check) {
            bool ok = r.total_with_multiplicity == 2 && r.distinct.size() == 2;
            if (ok) {
                constexpr double half_pi = std::numbers::pi / 2;
                ok = r.distinct[0].multiplicity == 1 && r.distinct[1].multiplicity == 1 &&
                     std::abs(r.distinct[0].t + half_pi) <= 1e-10 && std::abs(r.distinct[1].t - half_pi) <= 1e-10;
            }
            rec["pass"] = ok;
        }
        out.records.push_back(std::move(rec));
    }
}

void cmd_fekete(const Config& c, Output& out) {
    std::vector<std::int64_t> ps;
    for (std::size_t n : parse_n_list(c.n_text)) {
        ps.push_back(static_cast<std::int64_t>(n));
    }
    for (const auto& row : ul::fekete_density(ps)) {
        json rec{{"command", "fekete"}};
        rec.update(ul::to_json(row));
        if (rec["pass"].is_null()) {
            rec.erase("pass");
        }
        out.records.push_back(std::move(rec));
    }
}

void cmd_scan(const Config& c, Output& out) {
    ul::ScanOptions opts;
    opts.workers = c.workers;
    opts.limit = c.limit;
    opts.checkpoint_path = c.checkpoint;
    if (!c.alphabet.empty()) {
        opts.alphabet = ul::Alphabet(ul::parse_coefficient_list(c.alphabet));
    }
    ul::ScanRecord r;
    if (!c.resume.empty()) {
        r = ul::resume(c.resume, opts);
    } else {
        if (c.exhaustive == (c.sample > 0)) {
            throw UsageError("scan needs exactly one of --exhaustive or --sample N");
        }
        const ul::Family fam = ul::family_from_string(c.family);
        const ul::ScanMode mode = c.exhaustive ? ul::ScanMode::all() : ul::ScanMode::sample(c.sample, c.seed);
        r = ul::scan_family(fam, single_n(c), mode, opts);
    }
    json rec{{"command", "scan"}};
    rec.update(ul::to_json(r));
    out.records.push_back(std::move(rec));
    out.csv_header = ul::csv_header();
    out.csv_lines.push_back(ul::to_csv_row(r));
}

void cmd_verify(const Config& c, Output& out) {
    std::vector<std::pair<std::string, ul::CosineSparse>> inputs;
    if (c.sample > 0) {
        for (std::uint64_t i = 0; i < c.sample; ++i) {
            inputs.emplace_back(std::to_string(i), ul::random_cosine_sparse(c.seed, i));
        }
    } else {
        inputs.emplace_back("input", ul::CosineSparse::from(ul::CosinePolynomial(read_coefficients(c))));
    }
    for (const auto& [id, q] : inputs) {
        for (auto check : {ul::LowerCheck::thm14, ul::LowerCheck::lemma38}) {
            json rec = ul::to_json(ul::verify_l1_lower(q, check));
            rec["input_id"] = id;
            out.records.push_back(std::move(rec));
        }
        json rec = ul::to_json(ul::verify_l1_upper(q));
        rec["input_id"] = id;
        out.records.push_back(std::move(rec));
    }
}

void cmd_periodic(const Config& c, Output& out) {
    const auto block = read_coefficients(c);
    const auto prefix = c.prefix.empty() ? std::vector<ul::Rational>{} : ul::parse_coefficient_list(c.prefix);
    const auto r = ul::periodic_tail_experiment(prefix, block, parse_n_list(c.n_text));
    json rec{{"command", "periodic"}, {"family", ul::to_string(ul::Family::periodic_tail)}};
    rec.update(ul::to_json(r));
    out.records.push_back(std::move(rec));
}

std::string csv_cell(const json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char ch : s) {
            q += ch;
            if (ch == '"') {
                q += '"';
            }
        }
        return q + "\"";
    }
    return s;
}

std::string render(const Output& out, const std::string& format) {
    std::string text;
    if (format == "jsonl") {
        for (const auto& r : out.records) {
            text += r.dump() + "\n";
        }
        return text;
    }
    if (!out.csv_lines.empty()) {
        text = out.csv_header + "\n";
        for (const auto& line : out.csv_lines) {
            text += line + "\n";
        }
        return text;
    }
    // generic flattening: union of top-level keys, sorted
    std::vector<std::string> keys;
    for (const auto& r : out.records) {
        for (const auto& [k, v] : r.items()) {
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
                keys.push_back(k);
            }
        }
    }
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        text += (i ? "," : "") + keys[i];
    }
    text += "\n";
    for (const auto& r : out.records) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
            text += i ? "," : "";
            if (r.contains(keys[i])) {
                text += csv_cell(r.at(keys[i]));
            }
        }
        text += "\n";
    }
    return text;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text << std::flush;
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << text;
        if (!f.flush()) {
            throw std::runtime_error("cannot write " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zeros of polynomials on the unit circle: counting, scans, L1 checks"};
    app.require_subcommand(1, 1);
    Config c;
    if (const char* env = std::getenv("UL_WORKERS")) {
        try {
            c.workers = static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception&) {
            std::cerr << "error: UL_WORKERS must be a positive integer\n";
            return 2;
        }
    }

    auto common = [&](CLI::App* sub) {
        sub->add_option("--coeffs", c.coeffs, "inline coefficients, index 0 first, e.g. 1,-1,3/2");
        sub->add_option("--file", c.file, "polynomial file (JSON or inline list)");
        sub->add_option("--family", c.family, "srl | skew | fekete | custom-alphabet");
        sub->add_option("--n", c.n_text, "degree, prime, or comma list");
        sub->add_flag("--exhaustive", c.exhaustive);
        sub->add_option("--sample", c.sample, "number of seeded samples");
        sub->add_option("--seed", c.seed);
        auto* ex = sub->add_flag("--exact", c.exact);
        auto* fl = sub->add_flag("--float", c.use_float);
        ex->excludes(fl);
        sub->add_option("--grid", c.grid, "float grid size (0 = automatic)");
        sub->add_option("--tol", c.tol, "float tangency tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--workers", c.workers)->check(CLI::PositiveNumber);
        sub->add_option("--out", c.out, "output path (written atomically)");
        sub->add_option("--format", c.format)->check(CLI::IsMember({"csv", "jsonl"}));
        sub->add_option("--delta", c.delta, "window half-width for windowed L1");
        sub->add_flag("--check", c.check);
    };

    auto* count = app.add_subcommand("count", "unimodular zeros of P");
    auto* scan = app.add_subcommand("scan", "exhaustive or sampled family scan");
    auto* fek = app.add_subcommand("fekete", "Fekete zero density");
    auto* cex = app.add_subcommand("counterexample", "zeros of the two-zero cosine family");
    auto* ver = app.add_subcommand("verify", "L1 inequality checks on cosine sums");
    auto* per = app.add_subcommand("periodic", "eventually periodic coefficient experiment");
    for (auto* s : {count, scan, fek, cex, ver, per}) {
        common(s);
    }
    scan->add_option("--checkpoint", c.checkpoint, "checkpoint file to write");
    scan->add_option("--resume", c.resume, "continue from a checkpoint file");
    scan->add_option("--limit", c.limit, "stop after this many members");
    scan->add_option("--alphabet", c.alphabet, "alphabet for custom-alphabet scans");
    per->add_option("--prefix", c.prefix, "coefficients before the periodic block");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (c.workers == 0) {
        std::cerr << "error: workers must be at least 1\n";
        return 2;
    }

    Output out;
    try {
        if (count->parsed()) {
            cmd_count(c, out);
        } else if (scan->parsed()) {
            cmd_scan(c, out);
        } else if (fek->parsed()) {
            cmd_fekete(c, out);
        } else if (cex->parsed()) {
            cmd_counterexample(c, out);
        } else if (ver->parsed()) {
            cmd_verify(c, out);
        } else if (per->parsed()) {
            cmd_periodic(c, out);
        }
        emit(render(out, c.format), c.out);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ul::FormatError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ul::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const ul::Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    for (const auto& r : out.records) {
        if (r.contains("pass") && r["pass"].is_boolean() && !r["pass"].get<bool>()) {
            return 1;
        }
    }
    return 0;
}
