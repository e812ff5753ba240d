// ndstk command-line front end: runs the experiment families and writes
// deterministic JSON/CSV artifacts. Exit codes: 0 success, 2 config error,
// 3 incomplete/inconclusive result.

#include "ndstk/chains.hpp"
#include "ndstk/constructions.hpp"
#include "ndstk/csv.hpp"
#include "ndstk/entropy.hpp"
#include "ndstk/sensitivity.hpp"
#include "ndstk/serialize.hpp"
#include "ndstk/shadowing.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace ndstk;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIncomplete = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Resolved string-valued configuration: config-file values overridden by
// explicitly passed flags, with defaults filled in. The full resolved map is
// embedded in every artifact.
class Resolved {
public:
    Resolved(const Json& file_cfg, const std::map<std::string, std::string>& cli,
             const std::map<std::string, std::string>& defaults)
        : values_(defaults) {
        for (auto it = file_cfg.begin(); it != file_cfg.end(); ++it) {
            if (!values_.count(it.key()) && it.key() != "seed")
                throw ConfigError("unknown config key: " + it.key());
            values_[it.key()] = it->is_string() ? it->get<std::string>() : it->dump();
        }
        for (const auto& [k, v] : cli) values_[k] = v;
    }

    const std::string& str(const std::string& key) const { return values_.at(key); }
    long integer(const std::string& key) const {
        try {
            return std::stol(values_.at(key));
        } catch (const std::exception&) {
            throw ConfigError("expected integer for " + key + ": " + values_.at(key));
        }
    }
    Rat rat(const std::string& key) const {
        try {
            return rat_parse(values_.at(key));
        } catch (const std::exception&) {
            throw ConfigError("expected rational for " + key + ": " + values_.at(key));
        }
    }
    std::vector<Rat> rat_list(const std::string& key) const {
        std::vector<Rat> out;
        std::stringstream ss(values_.at(key));
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.push_back(rat_parse(item));
        if (out.empty()) throw ConfigError("expected rational list for " + key);
        return out;
    }
    bool flag(const std::string& key) const { return values_.at(key) == "true"; }

    Json to_json() const {
        Json out = Json::object();
        for (const auto& [k, v] : values_) out[k] = v;
        return out;
    }

private:
    std::map<std::string, std::string> values_;
};

uint64_t resolve_seed(const Json& file_cfg, const std::map<std::string, std::string>& cli) {
    uint64_t seed = 0;
    if (file_cfg.contains("seed"))
        seed = file_cfg["seed"].is_string()
                   ? std::stoull(file_cfg["seed"].get<std::string>())
                   : file_cfg["seed"].get<uint64_t>();
    if (cli.count("seed")) seed = std::stoull(cli.at("seed"));
    if (const char* env = std::getenv("NDSTK_SEED")) seed = std::stoull(env);
    return seed;
}

Json load_config(const std::string& path) {
    if (path.empty()) return Json::object();
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad config JSON: ") + e.what());
    }
}

NdsSpec resolve_system(const Resolved& cfg) {
    const std::string& name = cfg.str("system");
    if (name == "tent") return NdsSpec::constant(PLMap::tent());
    if (name == "identity") return NdsSpec::constant(PLMap::identity());
    if (name == "fm") return NdsSpec::constant(build_Fm(cfg.integer("m")));
    if (name == "rotation") {
        std::vector<PLMap> maps;
        for (const auto& a : cfg.rat_list("angles")) maps.push_back(PLMap::rotation(a));
        return NdsSpec::cycle(std::move(maps));
    }
    if (name == "transitive")
        return build_transitive_zero_entropy(cfg.integer("levels")).nds;
    if (name == "file") {
        std::ifstream in(cfg.str("system-file"));
        if (!in) throw ConfigError("cannot read system file: " + cfg.str("system-file"));
        return nds_from_json(Json::parse(in));
    }
    throw ConfigError("unknown system: " + name);
}

void write_json_artifact(const std::string& path, const std::string& experiment,
                         const Resolved& cfg, uint64_t seed, const Json& results) {
    if (path.empty()) return;
    Json doc{{"experiment", experiment},
             {"config", cfg.to_json()},
             {"seed", seed},
             {"results", results}};
    atomic_write(path, doc.dump(2) + "\n");
}

void csv_preamble(CsvWriter& csv, const Resolved& cfg, uint64_t seed) {
    csv.row({"config", cfg.to_json().dump(), std::to_string(seed)});
}

std::string dtos(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// --- entropy -----------------------------------------------------------------

Json series_to_json(const EntropySeries& s) {
    Json rows = Json::array();
    for (const auto& r : s.rows)
        rows.push_back({{"n", r.n},
                        {"eps", rat_str(r.eps)},
                        {"separated", r.separated},
                        {"spanning", r.spanning},
                        {"slope", r.slope}});
    return Json{{"kind", s.kind},
                {"candidate_count", s.candidate_count},
                {"summary_slope", s.summary_slope},
                {"fit_lo", s.fit_lo},
                {"fit_hi", s.fit_hi},
                {"complete", s.complete},
                {"rows", rows}};
}

int emit_entropy(const EntropySeries& series, const Resolved& cfg, uint64_t seed,
                 std::optional<double> oracle) {
    Json results = series_to_json(series);
    if (oracle) results["lap_count_entropy"] = *oracle;
    write_json_artifact(cfg.str("json"), "entropy", cfg, seed, results);
    if (!cfg.str("csv").empty()) {
        CsvWriter csv;
        csv_preamble(csv, cfg, seed);
        csv.row({"kind", "n", "eps", "sep", "span", "slope"});
        for (const auto& r : series.rows)
            csv.row({series.kind, std::to_string(r.n), rat_str(r.eps),
                     std::to_string(r.separated), std::to_string(r.spanning),
                     dtos(r.slope)});
        atomic_write(cfg.str("csv"), csv.str());
    }
    if (!cfg.str("plot").empty()) {
        if (series.rows.empty()) return kExitIncomplete;
        CsvWriter csv;
        csv_preamble(csv, cfg, seed);
        csv.row({"n", "log_count"});
        const Rat smallest = series.rows.back().eps;
        for (const auto& r : series.rows)
            if (r.eps == smallest)
                csv.row({std::to_string(r.n),
                         dtos(std::log(static_cast<double>(r.separated)))});
        atomic_write(cfg.str("plot"), csv.str());
    }
    std::cout << "kind=" << series.kind << " candidates=" << series.candidate_count
              << " summary_slope=" << dtos(series.summary_slope)
              << " fit=[" << series.fit_lo << "," << series.fit_hi << "]"
              << (series.complete ? "" : " INCOMPLETE") << "\n";
    if (oracle) std::cout << "lap_count_entropy=" << dtos(*oracle) << "\n";
    return series.complete ? kExitOk : kExitIncomplete;
}

int cmd_entropy(const Resolved& cfg, uint64_t seed) {
    NdsSpec nds = resolve_system(cfg);
    const std::string kind = cfg.str("kind");
    std::vector<Rat> eps = cfg.rat_list("eps");
    long n_max = cfg.integer("nmax");
    long den = cfg.integer("grid-den");
    EntropyOptions opts;
    opts.with_spanning = !cfg.flag("no-spanning");
    opts.candidate_budget = cfg.integer("budget");
    std::optional<double> oracle;
    if (nds.space == Space::interval && cfg.flag("oracle"))
        oracle = lap_count_entropy(nds, n_max);
    if (kind == "base") {
        BaseSystem sys{nds};
        auto series =
            entropy_estimate(sys, kind, eps, n_max, uniform_grid(nds.space, den), opts);
        return emit_entropy(series, cfg, seed, oracle);
    }
    if (kind == "power") {
        int k = static_cast<int>(cfg.integer("k"));
        auto sys = power_system(nds, k);
        auto series =
            entropy_estimate(sys, kind, eps, n_max, product_grid(nds.space, den, k), opts);
        return emit_entropy(series, cfg, seed, oracle);
    }
    if (kind == "product") {
        std::vector<NdsSpec> factors;
        std::stringstream ss(cfg.str("factors"));
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "tent")
                factors.push_back(NdsSpec::constant(PLMap::tent()));
            else if (item == "identity")
                factors.push_back(NdsSpec::constant(PLMap::identity()));
            else
                throw ConfigError("unknown product factor: " + item);
        }
        if (factors.empty()) throw ConfigError("empty factors");
        MixedProductSystem sys{factors};
        auto series = entropy_estimate(
            sys, kind, eps, n_max,
            product_grid(sys.space(), den, static_cast<int>(factors.size())), opts);
        return emit_entropy(series, cfg, seed, oracle);
    }
    if (kind == "hyper") {
        int m = static_cast<int>(cfg.integer("max-points"));
        auto sys = hyper_system(nds, m);
        auto series =
            entropy_estimate(sys, kind, eps, n_max, compact_grid(nds.space, den, m), opts);
        return emit_entropy(series, cfg, seed, oracle);
    }
    if (kind == "fuzzy") {
        int m = static_cast<int>(cfg.integer("max-points"));
        FuzzySystem sys{nds};
        if (cfg.str("fuzzy-metric") == "endograph") {
            sys.metric = FuzzyMetric::endograph;
            sys.endograph_resolution = cfg.integer("endograph-resolution");
        }
        auto series =
            entropy_estimate(sys, kind, eps, n_max, fuzzy_grid(nds.space, den, m), opts);
        return emit_entropy(series, cfg, seed, oracle);
    }
    if (kind == "arcs") {
        auto sys = arcs_system(nds);
        auto series = entropy_estimate(sys, kind, eps, n_max, arc_grid(den), opts);
        return emit_entropy(series, cfg, seed, oracle);
    }
    throw ConfigError("unknown kind: " + kind);
}

// --- construct ---------------------------------------------------------------

int cmd_construct(const Resolved& cfg, uint64_t seed) {
    long levels = cfg.integer("levels");
    auto built = build_transitive_zero_entropy(levels);
    Json results;
    Json svals = Json::array();
    for (size_t k = 0; k < built.boundaries.size(); ++k) {
        std::cout << "s_" << (k + 1) << " = " << built.boundaries[k] << "\n";
        svals.push_back(built.boundaries[k]);
    }
    results["s"] = svals;
    results["nds"] = to_json(built.nds);
    bool all_ok = true;
    if (cfg.flag("verify")) {
        Json checks = Json::array();
        for (long k = 1; k <= levels; ++k) {
            long sk = built.boundaries[k - 1];
            bool ok = true;
            for (long i = 0; i < (1L << k); ++i) {
                IntervalUnion u =
                    IntervalUnion::single(Rat(i, 1L << k), Rat(i + 1, 1L << k));
                for (long t = 0; t < sk; ++t) u = image(built.nds.map_at(t), u);
                ok = ok && u == IntervalUnion::full();
            }
            all_ok = all_ok && ok;
            std::cout << "level " << k << ": f_0^{s_" << k
                      << "}(J) = [0,1] for every dyadic J of generation " << k << ": "
                      << (ok ? "verified" : "FAILED") << "\n";
            checks.push_back({{"level", k}, {"verified", ok}});
        }
        results["verification"] = checks;
    }
    write_json_artifact(cfg.str("json"), "construct", cfg, seed, results);
    return all_ok ? kExitOk : kExitIncomplete;
}

// --- chains ------------------------------------------------------------------

int cmd_chains(const Resolved& cfg, uint64_t seed) {
    NdsSpec nds = resolve_system(cfg);
    const std::string prop_name = cfg.str("property");
    ChainProperty prop;
    if (prop_name == "transitive")
        prop = ChainProperty::transitive;
    else if (prop_name == "mixing")
        prop = ChainProperty::mixing;
    else if (prop_name == "weak-mixing")
        prop = ChainProperty::weak_mixing;
    else
        throw ConfigError("unknown property: " + prop_name);
    int order = static_cast<int>(cfg.integer("order"));
    Rat eps = cfg.rat("eps");
    long den = cfg.integer("grid-den");
    long horizon = cfg.integer("horizon");
    const std::string kind = cfg.str("chain-kind");
    ChainReport report = [&] {
        if (kind == "base") {
            BaseSystem sys{nds};
            return check_chain_property(sys, prop, order, eps,
                                        uniform_grid(nds.space, den), horizon);
        }
        if (kind == "hyper") {
            int m = static_cast<int>(cfg.integer("max-points"));
            HyperSystem sys{nds, m};
            return check_chain_property(sys, prop, order, eps,
                                        compact_grid(nds.space, den, m), horizon);
        }
        if (kind == "fuzzy") {
            int m = static_cast<int>(cfg.integer("max-points"));
            FuzzySystem sys{nds};
            return check_chain_property(sys, prop, order, eps,
                                        fuzzy_grid(nds.space, den, m), horizon);
        }
        throw ConfigError("unknown chain kind: " + kind);
    }();
    bool verified = report.verdict == ChainVerdict::verified_at_resolution;
    Json results{{"property", prop_name},
                 {"order", report.order},
                 {"epsilon", rat_str(report.epsilon)},
                 {"grid_size", report.grid_size},
                 {"horizon", report.horizon},
                 {"verdict", verified ? "verified-at-resolution" : "inconclusive"},
                 {"mixing_N", report.mixing_N},
                 {"note", report.note}};
    write_json_artifact(cfg.str("json"), "chains", cfg, seed, results);
    if (!cfg.str("csv").empty()) {
        CsvWriter csv;
        csv_preamble(csv, cfg, seed);
        csv.row({"pair_index", "from", "to", "min_chain_length"});
        for (size_t i = 0; i < report.pairs.size(); ++i)
            csv.row({std::to_string(i), std::to_string(report.pairs[i].from),
                     std::to_string(report.pairs[i].to),
                     std::to_string(report.pairs[i].min_length)});
        atomic_write(cfg.str("csv"), csv.str());
    }
    std::cout << "property=" << prop_name << " verdict="
              << (verified ? "verified-at-resolution" : "inconclusive");
    if (prop == ChainProperty::mixing && verified)
        std::cout << " N=" << report.mixing_N
                  << " (valid up to horizon; stability beyond is untested)";
    std::cout << "\n";
    return verified ? kExitOk : kExitIncomplete;
}

// --- shadow ------------------------------------------------------------------

int cmd_shadow(const Resolved& cfg, uint64_t seed) {
    NdsSpec nds = resolve_system(cfg);
    Rat eps = cfg.rat("eps");
    if (!cfg.str("orbit").empty()) {
        std::vector<Rat> orbit = cfg.rat_list("orbit");
        ShadowDecision d = cfg.flag("h-shadowing")
                               ? decide_h_shadowing(nds, orbit, eps)
                               : decide_finite_shadowing(nds, orbit, eps);
        Json jorbit = Json::array();
        for (const auto& x : orbit) jorbit.push_back(rat_str(x));
        Json results{{"orbit", jorbit},
                     {"eps", rat_str(eps)},
                     {"mode", cfg.flag("h-shadowing") ? "h-shadowing" : "finite"},
                     {"verdict", d.shadowed},
                     {"witness", d.witness ? Json(rat_str(*d.witness)) : Json(nullptr)},
                     {"boundary_flag", d.boundary_tight}};
        write_json_artifact(cfg.str("json"), "shadow", cfg, seed, results);
        std::cout << "shadowed=" << (d.shadowed ? "true" : "false");
        if (d.witness) std::cout << " witness=" << rat_str(*d.witness);
        if (d.boundary_tight) std::cout << " boundary-tight";
        std::cout << "\n";
        return kExitOk;
    }
    auto est = estimate_shadowing_modulus(nds, eps, cfg.integer("trials"),
                                          cfg.integer("orbit-length"),
                                          cfg.rat_list("delta-grid"), seed);
    Json rows = Json::array();
    for (const auto& r : est.rows)
        rows.push_back({{"delta", rat_str(r.delta)}, {"accepted", r.accepted}});
    Json cex = Json::array();
    for (const auto& x : est.counterexample) cex.push_back(rat_str(x));
    Json results{{"eps", rat_str(est.eps)},
                 {"trials", est.trials},
                 {"orbit_length", est.orbit_length},
                 {"delta", rat_str(est.delta)},
                 {"rows", rows},
                 {"counterexample", cex}};
    write_json_artifact(cfg.str("json"), "shadow", cfg, seed, results);
    if (!cfg.str("csv").empty()) {
        CsvWriter csv;
        csv_preamble(csv, cfg, seed);
        csv.row({"delta", "accepted"});
        for (const auto& r : est.rows)
            csv.row({rat_str(r.delta), r.accepted ? "1" : "0"});
        atomic_write(cfg.str("csv"), csv.str());
    }
    std::cout << "modulus delta=" << rat_str(est.delta) << " at eps=" << rat_str(eps)
              << " seed=" << est.seed << "\n";
    return kExitOk;
}

// --- sense -------------------------------------------------------------------

Json timeset_to_json(const TimeSet& ts) {
    Json members = Json::array();
    for (long n : ts.members) members.push_back(n);
    return Json{{"horizon", ts.horizon}, {"members", members}};
}

int cmd_sense(const Resolved& cfg, uint64_t seed) {
    NdsSpec nds = resolve_system(cfg);
    Rat eps = cfg.rat("eps");
    Rat delta = cfg.rat("delta");
    long horizon = cfg.integer("horizon");
    long samples = cfg.integer("samples");
    long extras = cfg.integer("extras");
    const std::string mode = cfg.str("mode");
    if (mode == "containments") {
        FiniteCompact K(nds.space, cfg.rat_list("K"));
        FiniteCompact core(nds.space, cfg.rat_list("core"));
        PCFuzzy u = core.subset_of(K) && !(core == K)
                        ? PCFuzzy({Rat(1, 2), Rat(1)}, {K, core})
                        : chi(K.unite(core));
        auto report =
            induced_containments(nds, K, u, eps, delta, horizon, samples, extras, seed);
        Json results{{"fuzzy_chi", timeset_to_json(report.fuzzy_chi)},
                     {"hyper_K", timeset_to_json(report.hyper_K)},
                     {"hyper_core", timeset_to_json(report.hyper_core)},
                     {"fuzzy_u", timeset_to_json(report.fuzzy_u)},
                     {"containment_chi", report.containment_chi},
                     {"containment_core", report.containment_core},
                     {"violations", report.violations}};
        write_json_artifact(cfg.str("json"), "sense", cfg, seed, results);
        bool ok = report.containment_chi && report.containment_core;
        std::cout << "containments " << (ok ? "hold" : "VIOLATED") << "\n";
        return ok ? kExitOk : kExitIncomplete;
    }
    FamilyPredicate family = [&] {
        const std::string& f = cfg.str("family");
        long p = cfg.integer("family-param");
        if (f == "infinite") return FamilyPredicate::infinite(p);
        if (f == "cofinite") return FamilyPredicate::cofinite(p);
        if (f == "syndetic") return FamilyPredicate::syndetic(p);
        if (f == "full") return FamilyPredicate::full();
        throw ConfigError("unknown family: " + f);
    }();
    std::vector<Rat> points = cfg.rat_list("points");
    BaseSystem sys{nds};
    auto report = check_multi_F_sensitive(sys, points, eps, delta, family, horizon,
                                          samples, extras, seed);
    Json per_point = Json::array();
    for (const auto& ts : report.per_point) per_point.push_back(timeset_to_json(ts));
    Json results{{"family", cfg.str("family")},
                 {"family_param", cfg.integer("family-param")},
                 {"member", report.member},
                 {"intersection", timeset_to_json(report.intersection)},
                 {"per_point", per_point},
                 {"note", "evidence at schedule: finite horizon and eps"}};
    write_json_artifact(cfg.str("json"), "sense", cfg, seed, results);
    if (!cfg.str("csv").empty()) {
        CsvWriter csv;
        csv_preamble(csv, cfg, seed);
        csv.row({"n", "member_flag"});
        for (long n = 1; n <= horizon; ++n)
            csv.row({std::to_string(n), report.intersection.contains(n) ? "1" : "0"});
        atomic_write(cfg.str("csv"), csv.str());
    }
    std::cout << "family_member=" << (report.member ? "true" : "false")
              << " |intersection|=" << report.intersection.members.size() << "\n";
    return kExitOk;
}

// --- metrics -----------------------------------------------------------------

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read file: " + path);
    return Json::parse(in);
}

int cmd_metrics(const Resolved& cfg, uint64_t) {
    Space space = cfg.str("space") == "circle" ? Space::circle : Space::interval;
    const std::string metric = cfg.str("metric");
    Json a = load_json_file(cfg.str("a"));
    Json b = load_json_file(cfg.str("b"));
    Rat d;
    if (metric == "hausdorff")
        d = hausdorff(compact_from_json(a, space), compact_from_json(b, space));
    else if (metric == "dinf")
        d = d_infty(fuzzy_from_json(a, space), fuzzy_from_json(b, space));
    else if (metric == "endograph")
        d = d_endograph(fuzzy_from_json(a, space), fuzzy_from_json(b, space),
                        EndographGrid(cfg.integer("endograph-resolution")));
    else if (metric == "arc")
        d = arc_hausdorff(arc_from_json(a), arc_from_json(b));
    else
        throw ConfigError("unknown metric: " + metric);
    std::cout << rat_str(d) << "\n";
    return kExitOk;
}

struct Command {
    CLI::App* app = nullptr;
    std::map<std::string, std::string> cli;
    std::map<std::string, std::string> defaults;
    std::string config_path;

    void opt(const std::string& name, const std::string& def, const std::string& help) {
        defaults[name] = def;
        app->add_option_function<std::string>(
            "--" + name, [this, name](const std::string& v) { cli[name] = v; }, help);
    }
    void flag(const std::string& name, const std::string& help) {
        defaults[name] = "false";
        app->add_flag_callback(
            "--" + name, [this, name] { cli[name] = "true"; }, help);
    }
    void common() {
        app->add_option("--config", config_path, "JSON config file");
        opt("seed", "0", "RNG seed (NDSTK_SEED overrides)");
        opt("json", "", "JSON artifact path");
        opt("csv", "", "CSV artifact path");
    }
    void system_opts() {
        opt("system", "tent", "tent|identity|fm|rotation|transitive|file");
        opt("m", "1", "parameter for fm");
        opt("angles", "1/3", "rotation angles, comma-separated");
        opt("levels", "3", "levels for the transitive construction");
        opt("system-file", "", "NdsSpec JSON file (system=file)");
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ndstk: non-autonomous dynamics toolkit"};
    app.require_subcommand(1);

    Command entropy_cmd, construct_cmd, chains_cmd, shadow_cmd, sense_cmd, metrics_cmd;

    entropy_cmd.app = app.add_subcommand("entropy", "separated/spanning entropy series");
    entropy_cmd.common();
    entropy_cmd.system_opts();
    entropy_cmd.opt("kind", "base", "base|power|product|hyper|fuzzy|arcs");
    entropy_cmd.opt("k", "2", "power order");
    entropy_cmd.opt("factors", "tent,identity", "mixed product factors");
    entropy_cmd.opt("max-points", "2", "compact size cap (hyper/fuzzy)");
    entropy_cmd.opt("eps", "1/8,1/16", "decreasing epsilon schedule");
    entropy_cmd.opt("nmax", "8", "largest n");
    entropy_cmd.opt("grid-den", "64", "candidate grid denominator");
    entropy_cmd.opt("budget", "0", "candidate budget (0 = unlimited)");
    entropy_cmd.opt("fuzzy-metric", "dinf", "dinf|endograph");
    entropy_cmd.opt("endograph-resolution", "1000", "endograph grid resolution");
    entropy_cmd.opt("plot", "", "plot-data CSV path (n, log_count)");
    entropy_cmd.flag("no-spanning", "skip spanning counts");
    entropy_cmd.flag("oracle", "also run the lap-count oracle");

    construct_cmd.app = app.add_subcommand("construct", "transitive zero-entropy NDS");
    construct_cmd.common();
    construct_cmd.opt("levels", "3", "levels to build");
    construct_cmd.flag("verify", "exact per-level image verification");

    chains_cmd.app = app.add_subcommand("chains", "chain property checks");
    chains_cmd.common();
    chains_cmd.system_opts();
    chains_cmd.opt("property", "transitive", "transitive|mixing|weak-mixing");
    chains_cmd.opt("order", "2", "weak-mixing order");
    chains_cmd.opt("eps", "1/10", "chain step bound");
    chains_cmd.opt("grid-den", "50", "grid denominator");
    chains_cmd.opt("horizon", "64", "length horizon");
    chains_cmd.opt("chain-kind", "base", "base|hyper|fuzzy");
    chains_cmd.opt("max-points", "2", "compact size cap (hyper/fuzzy)");

    shadow_cmd.app = app.add_subcommand("shadow", "shadowing decisions and modulus");
    shadow_cmd.common();
    shadow_cmd.system_opts();
    shadow_cmd.opt("eps", "1/10", "shadowing radius");
    shadow_cmd.opt("orbit", "", "explicit pseudo-orbit (decision mode)");
    shadow_cmd.flag("h-shadowing", "decide h-shadowing instead of finite");
    shadow_cmd.opt("trials", "20", "sampled pseudo-orbits per delta");
    shadow_cmd.opt("orbit-length", "10", "pseudo-orbit length");
    shadow_cmd.opt("delta-grid", "1/20,1/40,1/80,1/160", "delta grid");

    sense_cmd.app = app.add_subcommand("sense", "sensitivity time sets and families");
    sense_cmd.common();
    sense_cmd.system_opts();
    sense_cmd.opt("mode", "multi", "multi|containments");
    sense_cmd.opt("points", "1/3", "points, comma-separated");
    sense_cmd.opt("eps", "1/10", "neighborhood radius");
    sense_cmd.opt("delta", "1/4", "separation threshold");
    sense_cmd.opt("horizon", "40", "time horizon");
    sense_cmd.opt("samples", "50", "stratified samples per ball");
    sense_cmd.opt("extras", "0", "seeded random extra samples");
    sense_cmd.opt("family", "infinite", "infinite|cofinite|syndetic|full");
    sense_cmd.opt("family-param", "1", "family parameter");
    sense_cmd.opt("K", "0,1/2", "compact for containment mode");
    sense_cmd.opt("core", "0", "core compact for containment mode");

    metrics_cmd.app = app.add_subcommand("metrics", "exact metric evaluations");
    metrics_cmd.common();
    metrics_cmd.opt("metric", "hausdorff", "hausdorff|dinf|endograph|arc");
    metrics_cmd.opt("space", "interval", "interval|circle");
    metrics_cmd.opt("a", "", "first state JSON file");
    metrics_cmd.opt("b", "", "second state JSON file");
    metrics_cmd.opt("endograph-resolution", "1000", "endograph grid resolution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    auto dispatch = [&](Command& cmd, int (*fn)(const Resolved&, uint64_t)) {
        Json file_cfg = load_config(cmd.config_path);
        uint64_t seed = resolve_seed(file_cfg, cmd.cli);
        cmd.cli["seed"] = std::to_string(seed);
        Resolved cfg(file_cfg, cmd.cli, cmd.defaults);
        return fn(cfg, seed);
    };

    try {
        if (entropy_cmd.app->parsed()) return dispatch(entropy_cmd, cmd_entropy);
        if (construct_cmd.app->parsed()) return dispatch(construct_cmd, cmd_construct);
        if (chains_cmd.app->parsed()) return dispatch(chains_cmd, cmd_chains);
        if (shadow_cmd.app->parsed()) return dispatch(shadow_cmd, cmd_shadow);
        if (sense_cmd.app->parsed()) return dispatch(sense_cmd, cmd_sense);
        if (metrics_cmd.app->parsed()) return dispatch(metrics_cmd, cmd_metrics);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ndstk::argument_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "incomplete: " << e.what() << "\n";
        return kExitIncomplete;
    }
    return kExitConfig;
}
