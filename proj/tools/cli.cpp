#include "cli.hpp"

#include <qinterp/prony.hpp>
#include <qinterp/qsim.hpp>
#include <qinterp/serialize.hpp>
#include <qinterp/zmap.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <set>

namespace qinterp::cli {

using nlohmann::json;

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::BudgetExceeded:
        case ErrorKind::CapExceeded: return kBudget;
        case ErrorKind::SingularHankel:
        case ErrorKind::WrongRootCount:
        case ErrorKind::ZeroWeight: return kNotInRange;
        case ErrorKind::AttemptsExhausted: return kAttemptsExhausted;
        case ErrorKind::NotPrime:
        case ErrorKind::DegreeZero:
        case ErrorKind::FieldMismatch:
        case ErrorKind::LengthMismatch:
        case ErrorKind::InvalidParams:
        case ErrorKind::InsufficientSamples:
        case ErrorKind::IndexOutOfRange:
        case ErrorKind::BadRegisterIndex:
        case ErrorKind::ShapeMismatch: return kValidation;
        default: return kOther;
    }
}

namespace {

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw Error(ErrorKind::InvalidParams, "bad " + std::string(what) + " '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

}  // namespace

std::vector<std::uint64_t> parse_q_sweep(std::string_view sweep, std::vector<std::uint64_t>& skipped) {
    std::set<std::uint64_t> qs;
    for (auto token : split(sweep, ',')) {
        const auto dots = token.find("..");
        if (dots == std::string_view::npos) {
            const auto q = parse_uint(token, "field order");
            if (prime_power_decomposition(q).first == 0) {
                throw Error(ErrorKind::NotPrime, std::to_string(q) + " is not a prime power");
            }
            qs.insert(q);
            continue;
        }
        const auto lo = parse_uint(token.substr(0, dots), "range start");
        const auto hi = parse_uint(token.substr(dots + 2), "range end");
        if (lo > hi || hi > (1u << 16)) throw Error(ErrorKind::InvalidParams, "bad q range '" + std::string(token) + "'");
        for (auto q = std::max<std::uint64_t>(lo, 2); q <= hi; ++q) {
            if (prime_power_decomposition(q).first != 0) {
                qs.insert(q);
            } else {
                skipped.push_back(q);
            }
        }
    }
    return {qs.begin(), qs.end()};
}

namespace {

struct Config {
    std::uint32_t p = 0;
    std::uint32_t r = 1;
    std::string q_sweep;
    unsigned d = 1;
    unsigned k = 0;
    bool k_given = false;
    unsigned n = 1;
    std::string scope = "good";
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string format = "json";
    std::string output;

    // invert
    std::string z;
    bool verify_all = false;
    unsigned attempts = 0;
    // simulate
    std::string variant = "optimal";
    std::string c;
    bool all_c = false;
    bool dump_state = false;
    // multivariate
    std::string mode = "exact";
    std::uint64_t samples = 1000;
    std::string estimator = "auto";

    EnumerationLimits enum_limits;
    StateLimits state_limits;

    Scope scope_value() const { return scope == "all" ? Scope::all : Scope::good; }
};

struct Fields {
    std::vector<Field> fields;
    std::vector<std::uint64_t> skipped;
};

void apply_env_caps(Config& cfg) {
    auto read = [](const char* name, std::uint64_t& target) {
        if (const char* v = std::getenv(name); v != nullptr && *v != '\0') target = parse_uint(v, name);
    };
    read("QINTERP_CELL_CAP", cfg.enum_limits.cell_cap);
    read("QINTERP_PAIR_CAP", cfg.enum_limits.pair_cap);
    read("QINTERP_STATE_CAP", cfg.state_limits.state_cap);
    cfg.enum_limits.workers = std::max(1u, cfg.workers);
}

Fields resolve_fields(const Config& cfg) {
    Fields out;
    if (!cfg.q_sweep.empty()) {
        for (auto q : parse_q_sweep(cfg.q_sweep, out.skipped)) out.fields.push_back(Field::of_order(q));
    } else {
        if (cfg.p == 0) throw Error(ErrorKind::InvalidParams, "give either -p (with -r) or -q");
        out.fields.emplace_back(cfg.p, cfg.r);
    }
    if (out.fields.empty()) throw Error(ErrorKind::InvalidParams, "the q sweep contains no prime powers");
    return out;
}

std::vector<Elem> parse_elements(const Field& F, std::string_view s, std::size_t expected, std::string_view what) {
    std::vector<Elem> out;
    for (auto tok : split(s, ',')) out.push_back(F.element(parse_uint(tok, what)));
    if (out.size() != expected) {
        throw Error(ErrorKind::LengthMismatch, std::string(what) + " has " + std::to_string(out.size()) +
                                                   " entries, expected " + std::to_string(expected));
    }
    return out;
}

json indices(std::span<const Elem> v) {
    auto a = json::array();
    for (Elem e : v) a.push_back(e.v);
    return a;
}

json config_json(const Config& cfg, std::string_view command) {
    json c = {{"command", command}, {"d", cfg.d}, {"n", cfg.n}, {"scope", cfg.scope}, {"seed", cfg.seed},
              {"workers", cfg.workers}, {"cell_cap", cfg.enum_limits.cell_cap},
              {"pair_cap", cfg.enum_limits.pair_cap}, {"state_cap", cfg.state_limits.state_cap}};
    if (cfg.k_given) c["k"] = cfg.k;
    if (cfg.q_sweep.empty()) {
        c["p"] = cfg.p;
        c["r"] = cfg.r;
    } else {
        c["q"] = cfg.q_sweep;
    }
    return c;
}

// A command fills records and may set a non-zero status (for example a
// failed inversion that still reports its failure kind).
struct Outcome {
    json records = json::array();
    json notes = json::array();
    int status = kOk;
};

ProblemParams params_for(const Field& F, const Config& cfg, unsigned k) {
    return ProblemParams{F, cfg.d, k, cfg.n};
}

void note_skipped(const Fields& f, Outcome& o) {
    if (f.skipped.empty()) return;
    json list = f.skipped;
    o.notes.push_back({{"skipped_not_prime_power", std::move(list)}});
}

Outcome cmd_census(const Config& cfg) {
    const Fields f = resolve_fields(cfg);
    Outcome o;
    note_skipped(f, o);
    for (const auto& F : f.fields) {
        const auto P = params_for(F, cfg, cfg.k);
        o.records.push_back(census_json(enumerate_census(P, cfg.enum_limits)));
    }
    return o;
}

unsigned implied_k(const Config& cfg) {
    const unsigned k = cfg.d % 2 == 1 ? (cfg.d + 1) / 2 : cfg.d / 2 + 1;
    if (cfg.k_given && cfg.k != k) {
        throw Error(ErrorKind::InvalidParams, "inversion needs k = " + std::to_string(k) + " for d = " +
                                                  std::to_string(cfg.d));
    }
    return k;
}

json verify_all(const ProblemParams& P) {
    const Field& F = P.field;
    const unsigned k = P.k;
    std::uint64_t kfact = 1;
    for (unsigned i = 2; i <= k; ++i) kfact *= i;
    std::uint64_t pairs = 0, fibers = 0, failures = 0;
    if (P.d % 2 == 1) {
        const std::uint64_t side = checked_power(P.q(), k);
        for (std::uint64_t xi = 0; xi < side; ++xi) {
            const auto x = tuple_from_index(F, xi, k);
            if (!is_good_x(x)) continue;
            const bool sorted = std::is_sorted(x.begin(), x.end());
            for (std::uint64_t yi = 0; yi < side; ++yi) {
                const auto y = tuple_from_index(F, yi, k);
                if (!is_good_y(y)) continue;
                ++pairs;
                PairXY pair{x, y};
                std::vector<std::size_t> order(k);
                std::iota(order.begin(), order.end(), 0);
                std::sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
                PairXY expected;
                for (auto i : order) {
                    expected.x.push_back(x[i]);
                    expected.y.push_back(y[i]);
                }
                try {
                    if (invert_z(P, z_eval(P, pair)).pair != expected) ++failures;
                } catch (const Error&) {
                    ++failures;
                }
                if (sorted) ++fibers;
            }
        }
    } else {
        const auto census = enumerate_census(P);
        for (std::uint64_t zi = 0; zi < census.cells(); ++zi) {
            const auto z = tuple_from_index(F, zi, P.d + 1);
            const auto ext = valid_extensions(P, z);
            bool ok = ext.size() * kfact == census.fiber_good[zi];
            for (const auto& c : ext) ok = ok && z_eval(P, c.pair) == z;
            if (!ok) ++failures;
            if (census.fiber_good[zi] != 0) ++fibers;
            pairs += census.fiber_good[zi];
        }
    }
    return {{"params", params_json(P)},
            {"pairs_checked", pairs},
            {"fibers_checked", fibers},
            {"failures", failures},
            {"summary", failures == 0 ? std::string("all fibers verified")
                                      : std::to_string(failures) + " failures"}};
}

Outcome cmd_invert(const Config& cfg) {
    const Fields f = resolve_fields(cfg);
    if (f.fields.size() != 1) throw Error(ErrorKind::InvalidParams, "invert takes a single field");
    const auto P = params_for(f.fields.front(), cfg, implied_k(cfg));
    P.validate(true);
    Outcome o;
    if (cfg.verify_all) {
        auto rec = verify_all(P);
        if (rec["failures"].get<std::uint64_t>() != 0) o.status = kOther;
        o.records.push_back(std::move(rec));
        return o;
    }
    if (cfg.z.empty()) throw Error(ErrorKind::InvalidParams, "invert needs --z or --verify-all");
    const auto z = parse_elements(P.field, cfg.z, P.d + 1, "z");
    json rec = {{"params", params_json(P)}, {"z", indices(z)}};
    try {
        CanonicalPair got;
        if (P.d % 2 == 1) {
            got = invert_z(P, z);
        } else {
            Rng rng(cfg.seed);
            got = invert_z_extended(P, z, rng, cfg.attempts);
        }
        rec["status"] = "ok";
        rec["x"] = indices(got.pair.x);
        rec["y"] = indices(got.pair.y);
        rec["extension"] = got.extension ? json(got.extension->v) : json(nullptr);
        rec["attempts"] = got.attempts;
    } catch (const Error& e) {
        if (!is_not_in_good_range(e.kind()) && e.kind() != ErrorKind::AttemptsExhausted) throw;
        rec["status"] = to_string(e.kind());
        rec["message"] = e.what();
        o.status = exit_code(e.kind());
    }
    o.records.push_back(std::move(rec));
    return o;
}

std::vector<Elem> choose_c(const ProblemParams& P, const Config& cfg, Rng& rng) {
    if (!cfg.c.empty()) return parse_elements(P.field, cfg.c, P.d + 1, "c");
    std::uniform_int_distribution<std::uint32_t> any(0, P.q() - 1);
    std::vector<Elem> c(P.d + 1);
    for (auto& e : c) e = Elem{any(rng)};
    return c;
}

json simulate_one(const ProblemParams& P, const Config& cfg, Rng& rng) {
    const Scope scope = cfg.scope_value();
    const auto census = enumerate_census(P, cfg.enum_limits);
    const Rational optimum = success_probability(census, Scope::all);

    std::function<MeasurementResult(std::span<const Elem>)> run;
    json rec = {{"params", params_json(P)}, {"variant", cfg.variant}};
    std::optional<OptimalInterpolator> optimal, optimal_all;
    std::optional<PgmSimulator> pgm;
    std::optional<SuperposedRepSimulator> superposed;
    double expected = 0.0;
    if (cfg.variant == "optimal") {
        optimal.emplace(P, scope, RepresentativeSource::automatic, cfg.state_limits);
        run = [&](std::span<const Elem> c) { return optimal->run(c); };
        const Rational exact = success_probability(census, scope);
        rec["scope"] = to_string(scope);
        rec["representatives"] = optimal->source() == RepresentativeSource::prony ? "prony" : "census";
        rec["expected"] = rational_json(exact);
        expected = to_double(exact);
    } else if (cfg.variant == "pgm") {
        pgm.emplace(P, cfg.state_limits);
        run = [&](std::span<const Elem> c) { return pgm->run(c); };
        expected = pgm->formula();
        rec["expected"] = {{"value", expected}};
    } else {
        superposed.emplace(P, cfg.state_limits);
        run = [&](std::span<const Elem> c) { return superposed->run(c); };
        const Rational exact = success_probability(census, Scope::good);
        rec["scope"] = "good";
        rec["expected"] = rational_json(exact);
        expected = to_double(exact);
    }

    const auto c = choose_c(P, cfg, rng);
    const auto result = run(c);
    rec["c"] = indices(c);
    rec["success"] = result.success;
    rec["abs_error"] = std::abs(result.success - expected);
    rec["optimum_all"] = rational_json(optimum);
    rec["within_optimum"] = result.success <= to_double(optimum) + 1e-9;
    rec["support"] = result.support;

    if (cfg.variant == "optimal") {
        // Both scopes, so the k = d+1 regime (where only scope all reaches
        // every z) is visible whichever scope was chosen.
        const Scope other = scope == Scope::all ? Scope::good : Scope::all;
        bool other_ok = true;
        try {
            P.validate(other == Scope::good);
        } catch (const Error&) {
            other_ok = false;
        }
        rec["success_" + std::string(to_string(scope))] = result.success;
        if (other_ok) {
            optimal_all.emplace(P, other, RepresentativeSource::automatic, cfg.state_limits);
            rec["success_" + std::string(to_string(other))] = optimal_all->run(c).success;
        }
        if (cfg.dump_state) rec["final_state"] = state_json(optimal->final_state(c));
    }

    if (cfg.all_c) {
        double lo = 1.0, hi = 0.0, worst = 0.0;
        const std::uint64_t cells = census.cells();
        for (std::uint64_t ci = 0; ci < cells; ++ci) {
            const auto s = run(tuple_from_index(P.field, ci, P.d + 1)).success;
            lo = std::min(lo, s);
            hi = std::max(hi, s);
            worst = std::max(worst, std::abs(s - expected));
        }
        rec["all_c"] = {{"count", cells},
                        {"success_min", lo},
                        {"success_max", hi},
                        {"spread", hi - lo},
                        {"max_abs_error", worst},
                        {"c_independent", hi - lo < 1e-12}};
    }
    return rec;
}

Outcome cmd_simulate(const Config& cfg) {
    const Fields f = resolve_fields(cfg);
    Outcome o;
    note_skipped(f, o);
    Rng rng(cfg.seed);
    for (const auto& F : f.fields) o.records.push_back(simulate_one(params_for(F, cfg, cfg.k), cfg, rng));
    return o;
}

Outcome cmd_rank(const Config& cfg) {
    const Fields f = resolve_fields(cfg);
    Outcome o;
    note_skipped(f, o);
    const Scope scope = cfg.scope_value();
    for (const auto& F : f.fields) {
        auto P = params_for(F, cfg, std::max(cfg.k, 1u));
        const auto rank = span_rank(P, cfg.k, scope, cfg.state_limits);
        const std::uint64_t range = cfg.k == 0 ? 1 : enumerate_census(P, cfg.enum_limits).range_size(scope);
        P.k = cfg.k;
        o.records.push_back({{"params", params_json(P)},
                             {"scope", to_string(scope)},
                             {"rank", rank},
                             {"range_size", range},
                             {"bound_holds", rank <= range}});
    }
    return o;
}

Outcome cmd_multivariate(const Config& cfg) {
    if (cfg.n == 1) return cmd_census(cfg);
    const Fields f = resolve_fields(cfg);
    Outcome o;
    note_skipped(f, o);
    o.notes.push_back("exploratory: finite-q ratios only, no asymptotic claim");
    const auto mode = cfg.mode == "sample" ? MultivariateMode::sample : MultivariateMode::exact;
    const auto estimator = cfg.estimator == "membership" ? SampleEstimator::membership
                           : cfg.estimator == "distinct" ? SampleEstimator::distinct_images
                                                         : SampleEstimator::automatic;
    Rng rng(cfg.seed);
    for (const auto& F : f.fields) {
        const auto P = params_for(F, cfg, cfg.k);
        const auto est = multivariate_census(P, mode, cfg.samples, rng, estimator, cfg.enum_limits);
        json rec = {{"params", params_json(P)},
                    {"mode", cfg.mode},
                    {"estimator", est.estimator == SampleEstimator::membership        ? "membership"
                                  : est.estimator == SampleEstimator::distinct_images ? "distinct"
                                                                                      : "auto"},
                    {"num_coeffs", est.num_coeffs},
                    {"space_size", est.space_size},
                    {"samples", est.samples},
                    {"hits", est.hits},
                    {"ratio", est.ratio},
                    {"std_error", est.std_error},
                    {"ci_low", est.ci_low},
                    {"ci_high", est.ci_high},
                    {"lower_bound", est.lower_bound}};
        if (est.exact_range_size) {
            rec["range_size"] = *est.exact_range_size;
            rec["ratio_exact"] = rational_json(Rational(*est.exact_range_size, est.space_size));
        } else {
            rec["range_size"] = nullptr;
        }
        o.records.push_back(std::move(rec));
    }
    return o;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
        return;
    }
    if (j.is_string()) {
        out.emplace_back(prefix, j.get<std::string>());
    } else if (j.is_null()) {
        out.emplace_back(prefix, "");
    } else {
        out.emplace_back(prefix, j.dump());
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + "\"";
}

std::string render_csv(const json& records) {
    std::vector<std::string> header;
    std::vector<std::map<std::string, std::string>> rows;
    for (const auto& rec : records) {
        std::vector<std::pair<std::string, std::string>> cells;
        flatten(rec, "", cells);
        std::map<std::string, std::string> row;
        for (auto& [key, value] : cells) {
            if (std::find(header.begin(), header.end(), key) == header.end()) header.push_back(key);
            row[key] = std::move(value);
        }
        rows.push_back(std::move(row));
    }
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + csv_field(header[i]);
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            const auto it = row.find(header[i]);
            out += (i ? "," : "") + (it == row.end() ? std::string() : csv_field(it->second));
        }
        out += '\n';
    }
    return out;
}

void add_field_options(CLI::App* sub, Config& cfg) {
    auto* p = sub->add_option("-p,--prime", cfg.p, "Field characteristic");
    sub->add_option("-r,--degree", cfg.r, "Extension degree (q = p^r)")->check(CLI::PositiveNumber);
    auto* q = sub->add_option("-q,--order", cfg.q_sweep, "Field order or sweep, e.g. 25 or 5..31 or 4,8,9");
    p->excludes(q);
    sub->add_option("-d,--poly-degree", cfg.d, "Polynomial degree d");
    sub->add_option("-n,--variables", cfg.n, "Number of variables n");
    sub->add_option("--scope", cfg.scope, "Pair scope")->check(CLI::IsMember({"all", "good"}));
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--workers", cfg.workers, "Census worker threads");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-o,--output", cfg.output, "Write results to this file");
}

CLI::Option* add_k(CLI::App* sub, Config& cfg) {
    return sub->add_option("-k,--queries", cfg.k, "Number of queries k");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Quantum polynomial interpolation experiments over finite fields", "qinterp"};
    app.require_subcommand(1);

    auto* census = app.add_subcommand("census", "Range census of the Z-map");
    add_field_options(census, cfg);
    add_k(census, cfg)->required();

    auto* invert = app.add_subcommand("invert", "Recover a sorted good pair from z");
    add_field_options(invert, cfg);
    add_k(invert, cfg);
    invert->add_option("--z", cfg.z, "Comma-separated element indices z_0..z_d");
    invert->add_flag("--verify-all", cfg.verify_all, "Round-trip every good pair");
    invert->add_option("--attempts", cfg.attempts, "Draw cap for z_{d+1} (default 40 k!)");

    auto* simulate = app.add_subcommand("simulate", "Statevector simulation of an interpolation algorithm");
    simulate->add_option("variant", cfg.variant, "optimal, pgm or superposed")
        ->check(CLI::IsMember({"optimal", "pgm", "superposed"}));
    add_field_options(simulate, cfg);
    add_k(simulate, cfg)->required();
    simulate->add_option("--c", cfg.c, "Comma-separated coefficient indices (default: random from the seed)");
    simulate->add_flag("--all-c", cfg.all_c, "Sweep every c and report the spread");
    simulate->add_flag("--dump-state", cfg.dump_state, "Include the final state (optimal only)");

    auto* rank = app.add_subcommand("rank", "Numerical rank of the final states over all c");
    add_field_options(rank, cfg);
    add_k(rank, cfg)->required();
    rank->get_option("--scope")->default_str("all");

    auto* multivariate = app.add_subcommand("multivariate", "Range size of the multivariate Z-map");
    add_field_options(multivariate, cfg);
    add_k(multivariate, cfg)->required();
    multivariate->add_option("--mode", cfg.mode, "exact or sample")->check(CLI::IsMember({"exact", "sample"}));
    multivariate->add_option("--samples", cfg.samples, "Number of samples in sample mode");
    multivariate->add_option("--estimator", cfg.estimator, "auto, membership or distinct")
        ->check(CLI::IsMember({"auto", "membership", "distinct"}));

    std::vector<const char*> argv{"qinterp"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidation;
    }

    const auto start = std::chrono::steady_clock::now();
    CLI::App* chosen = app.get_subcommands().front();
    const std::string command = chosen->get_name();
    if (command == "rank" && chosen->get_option("--scope")->count() == 0) cfg.scope = "all";
    cfg.k_given = chosen->get_option("-k")->count() > 0;

    try {
        apply_env_caps(cfg);
        Outcome o;
        if (command == "census") o = cmd_census(cfg);
        else if (command == "invert") o = cmd_invert(cfg);
        else if (command == "simulate") o = cmd_simulate(cfg);
        else if (command == "rank") o = cmd_rank(cfg);
        else o = cmd_multivariate(cfg);

        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::string text;
        if (cfg.format == "csv") {
            text = render_csv(o.records);
        } else {
            json doc = {{"schema_version", kSchemaVersion},
                        {"command", command},
                        {"config", config_json(cfg, command)},
                        {"records", o.records},
                        {"notes", o.notes},
                        {"duration_seconds", seconds}};
            text = doc.dump(2) + "\n";
        }
        if (cfg.output.empty()) {
            out << text;
        } else {
            std::ofstream file(cfg.output);
            if (!file) {
                err << "error: cannot open " << cfg.output << "\n";
                return kOther;
            }
            file << text;
        }
        for (const auto& rec : o.records) {
            if (rec.contains("status") && rec["status"] != "ok") err << "error: " << rec["message"].get<std::string>() << "\n";
        }
        return o.status;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kOther;
    }
}

}  // namespace qinterp::cli
