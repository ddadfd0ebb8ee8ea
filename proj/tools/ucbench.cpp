// ucbench: generate families, check the union-complexity and coloring bounds,
// run the sampling experiment, build charging certificates, and run the
// acceptance suite.
//
// Exit codes: 0 pass, 1 bound or certificate violation, 2 usage or input
// error, 3 generation failure.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ucb/ucb.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace ucb;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitGeneration = 3;

json provenance(const std::string& command, json config) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["command"] = command;
    j["config"] = std::move(config);
    return j;
}

void emit(const json& j, const std::string& path) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
    } else {
        write_text_file(path, text);
    }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// Reloads a family under a different tolerance, which re-runs validation.
Family load_with_eps(const std::string& path, const std::optional<double>& eps) {
    Family f = load_family(path);
    if (!eps) {
        return f;
    }
    if (f.is_discs()) {
        return Family::from_discs({f.discs().begin(), f.discs().end()}, Tolerance{*eps}, f.label());
    }
    return Family::from_curves({f.curves().begin(), f.curves().end()}, Tolerance{*eps}, f.label());
}

json family_summary(const Family& f) {
    return {{"kind", to_string(f.kind())}, {"label", f.label()}, {"n", f.size()}, {"eps", f.tol().eps}};
}

void report_failures(const BoundReport& r) {
    for (const Check* c : r.failures()) {
        std::cerr << "ucbench: bound violated: " << describe(*c) << "\n";
    }
}

double parse_probability(const std::string& token) {
    std::size_t used = 0;
    double p = 0.0;
    try {
        p = std::stod(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != token.size()) {
        throw ParameterError("--p must be a number or 'auto', got '" + token + "'");
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw ParameterError("--p must lie strictly between 0 and 1, got " + token);
    }
    return p;
}

// ---------------------------------------------------------------- generate

struct GenerateCmd {
    std::string generator;
    GeneratorParams params;
    int k = 2;
    double point_x = 0.0;
    double point_y = 0.0;
    double eps = 0.0;
    CLI::Option* eps_opt = nullptr;
    std::string output;
};

std::string bbox_text(const BoundingBox& b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "[%.6g, %.6g] x [%.6g, %.6g]", b.min_x, b.max_x, b.min_y, b.max_y);
    return buf;
}

int run_generate(GenerateCmd& cmd) {
    GeneratorParams& p = cmd.params;
    if (cmd.eps_opt && *cmd.eps_opt) {
        p.eps = cmd.eps;
    }
    json config;
    config["generator"] = cmd.generator;
    config["n"] = p.n;
    config["seed"] = p.seed;
    Family f = [&] {
        if (cmd.generator == "lines-parabolas") {
            config["k"] = cmd.k;
            return gen_lines_parabolas(p.n, cmd.k);
        }
        p.check();
        if (cmd.generator == "random-curves") {
            config["a_min_abs"] = p.a_min_abs;
            config["a_max"] = p.a_max;
            config["b_range"] = p.b_range;
            config["c_range"] = p.c_range;
            config["line_fraction"] = p.line_fraction;
            config["max_rounds"] = p.max_rounds;
            config["eps"] = optional_number(p.eps);
            return gen_random_curves(p);
        }
        config["box_min"] = p.box_min;
        config["box_max"] = p.box_max;
        config["r_min"] = p.r_min;
        config["r_max"] = p.r_max;
        config["max_rounds"] = p.max_rounds;
        config["eps"] = optional_number(p.eps);
        if (cmd.generator == "common-point-discs") {
            config["margin"] = p.margin;
            config["point"] = {cmd.point_x, cmd.point_y};
            return gen_common_point_discs(p, {cmd.point_x, cmd.point_y});
        }
        return gen_random_discs(p);
    }();

    json doc = family_to_json(f);
    doc["meta"] = provenance("generate", config);
    emit(doc, cmd.output);

    BoundingBox box;
    std::string what = "bounding box ";
    if (f.is_discs()) {
        for (const Circle& c : f.discs()) {
            box.expand(c);
        }
    } else {
        what = "intersection points span ";
        for (const auto& ip : intersection_points(f)) {
            box.expand(ip.p.x, ip.p.y);
        }
    }
    std::ostream& out = cmd.output.empty() ? std::cerr : std::cout;
    out << cmd.generator << ": n=" << f.size() << " kind=" << to_string(f.kind()) << " eps=" << f.tol().eps << " "
        << (box.empty() ? std::string("no intersection points") : what + bbox_text(box))
        << (cmd.output.empty() ? "" : " -> " + cmd.output) << "\n";
    return kExitPass;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeCmd {
    std::string input;
    double c = 6.0;
    std::string csv;
    std::string output;
    bool witness = false;
    double eps = 0.0;
    CLI::Option* eps_opt = nullptr;
};

int analyze_discs(const Family& f, const AnalyzeCmd& cmd, json& doc) {
    const auto pts = intersection_points(f);
    const GraphStats stats = graph_stats(f, cmd.witness);
    const DepthBoundReport depth = check_depth_bounds(f, pts, stats.omega);
    const DepthProfile prof = depth_profile(pts);

    BoundReport all;
    all.append(check_edge_bounds(stats, cmd.c));
    all.append(check_coloring_bounds(stats));
    all.append(depth.bounds);

    doc["graph"] = stats_to_json(stats, cmd.c);
    doc["intersections"] = pts.size();
    doc["union_complexity"] = depth.union_complexity;
    doc["max_depth"] = depth.max_depth;
    json profile = json::array();
    for (const auto& [k, g] : prof.g) {
        profile.push_back({{"k", k}, {"g", g}});
    }
    doc["depth_profile"] = std::move(profile);
    json rows = json::array();
    for (const auto& row : depth.rows) {
        rows.push_back({{"k", row.k},
                        {"g", row.g},
                        {"g_over_kn", row.ratio},
                        {"bound_3ekn", row.bound_3ekn},
                        {"bound_6ekn", row.bound_6ekn},
                        {"flagged", row.flagged()}});
    }
    doc["depth_bounds"] = {{"rows", std::move(rows)}, {"max_g_over_kn", depth.max_ratio}, {"report", to_json(depth.bounds)}};

    const bool common = has_common_interior_point(f, pts);
    json cp;
    cp["detected"] = common;
    if (common) {
        const BoundReport bound = check_common_point_bound(f, pts);
        all.append(bound);
        cp["report"] = to_json(bound);
    }
    doc["common_point"] = std::move(cp);

    if (!cmd.csv.empty()) {
        write_text_file(cmd.csv, prof.to_csv());
    }
    json flags = json::array();
    for (const Check* c : all.flags()) {
        flags.push_back(c->name);
    }
    json failures = json::array();
    for (const Check* c : all.failures()) {
        failures.push_back(c->name);
    }
    doc["flags"] = std::move(flags);
    doc["failures"] = std::move(failures);
    doc["pass"] = all.passed();
    report_failures(all);
    return all.passed() ? kExitPass : kExitViolation;
}

// Curves: levels use above_count, so g(F,k) counts points above at most k-2 curves.
int analyze_curves(const Family& f, const AnalyzeCmd& cmd, json& doc) {
    const auto pts = intersection_points(f);
    const std::size_t n = f.size();
    BoundReport bound;
    json profile = json::array();
    std::string csv = "k,g\n";
    for (int k = 2; k <= std::max<int>(2, static_cast<int>(n)); ++k) {
        const auto g = static_cast<std::size_t>(std::count_if(
            pts.begin(), pts.end(), [k](const IntersectionPoint& ip) { return ip.above_count <= k - 2; }));
        profile.push_back({{"k", k}, {"g", g}});
        csv += std::to_string(k) + "," + std::to_string(g) + "\n";
        bound.add("g(F," + std::to_string(k) + ") <= 2(k-1)n", static_cast<double>(g), Relation::LessEqual,
                  2.0 * (k - 1) * static_cast<double>(n));
    }
    doc["intersections"] = pts.size();
    doc["level_profile"] = std::move(profile);
    doc["level_bounds"] = to_json(bound);
    if (!cmd.csv.empty()) {
        write_text_file(cmd.csv, csv);
    }
    doc["pass"] = bound.passed();
    report_failures(bound);
    return bound.passed() ? kExitPass : kExitViolation;
}

int run_analyze(const AnalyzeCmd& cmd) {
    std::optional<double> eps;
    if (cmd.eps_opt && *cmd.eps_opt) {
        eps = cmd.eps;
    }
    const Family f = load_with_eps(cmd.input, eps);
    json doc = provenance("analyze", {{"input", cmd.input},
                                      {"c", cmd.c},
                                      {"csv", cmd.csv.empty() ? json(nullptr) : json(cmd.csv)},
                                      {"witness", cmd.witness},
                                      {"eps", optional_number(eps)}});
    doc["family"] = family_summary(f);
    const int code = f.is_discs() ? analyze_discs(f, cmd, doc) : analyze_curves(f, cmd, doc);
    emit(doc, cmd.output);
    return code;
}

// ------------------------------------------------------------------ sample

struct SampleCmd {
    std::string input;
    std::string p = "auto";
    std::uint64_t trials = kDefaultTrials;
    std::uint64_t seed = 0;
    double c = 6.0;
    std::string output;
    double eps = 0.0;
    CLI::Option* eps_opt = nullptr;
};

int run_sample(const SampleCmd& cmd) {
    std::optional<double> eps;
    if (cmd.eps_opt && *cmd.eps_opt) {
        eps = cmd.eps;
    }
    std::optional<double> fixed_p;
    if (cmd.p != "auto") {
        fixed_p = parse_probability(cmd.p);
    }
    if (cmd.trials < 1) {
        throw ParameterError("--trials must be at least 1");
    }
    const Family f = load_with_eps(cmd.input, eps);
    if (!f.is_discs()) {
        throw KindError("sample requires a discs family, got " + std::string(to_string(f.kind())));
    }
    const auto pts = intersection_points(f);
    const int omega = clique_number(build_graph(f)).omega;
    const double p = fixed_p ? *fixed_p : auto_probability(omega);
    const SampleReport rep = run_trials(f, p, cmd.trials, cmd.seed, cmd.c, omega);
    const SamplingChainReport chain = check_sampling_chain(f, pts, omega, cmd.c);

    json doc = provenance("sample", {{"input", cmd.input},
                                     {"p", cmd.p},
                                     {"resolved_p", p},
                                     {"trials", cmd.trials},
                                     {"seed", cmd.seed},
                                     {"c", cmd.c},
                                     {"eps", optional_number(eps)}});
    doc["family"] = family_summary(f);
    doc["sample"] = to_json(rep);
    doc["sample"]["chain_holds"] = rep.chain_holds();
    doc["chain_at_inverse_omega"] = to_json(chain);
    const bool pass = rep.chain_holds() && chain.passed() && rep.per_trial_violations == 0;
    doc["pass"] = pass;
    emit(doc, cmd.output);
    if (!rep.chain_holds()) {
        std::cerr << "ucbench: bound violated: lower_bound <= exact_E <= upper_bound at p=" << p << "\n";
    }
    report_failures(chain.bounds);
    if (rep.per_trial_violations > 0) {
        std::cerr << "ucbench: bound violated: " << rep.per_trial_violations << " trials with S* > 6n*-12\n";
    }
    return pass ? kExitPass : kExitViolation;
}

// ------------------------------------------------------------------ charge

struct ChargeCmd {
    std::string input;
    std::string k = "all";
    std::string ledger;
    std::string output;
    double eps = 0.0;
    CLI::Option* eps_opt = nullptr;
};

std::string ledger_path(const std::string& base, int k, bool many) {
    if (!many) {
        return base;
    }
    const std::filesystem::path p(base);
    return (p.parent_path() / (p.stem().string() + ".k" + std::to_string(k) + p.extension().string())).string();
}

int run_charge(const ChargeCmd& cmd) {
    std::optional<double> eps;
    if (cmd.eps_opt && *cmd.eps_opt) {
        eps = cmd.eps;
    }
    const Family f = load_with_eps(cmd.input, eps);
    if (!f.is_curves()) {
        throw KindError("charge requires a curves family, got " + std::string(to_string(f.kind())));
    }
    const int n = static_cast<int>(f.size());
    std::vector<int> levels;
    if (cmd.k == "all") {
        if (n < 2) {
            throw ParameterError("charge needs at least two curves");
        }
        for (int k = 2; k <= n; ++k) {
            levels.push_back(k);
        }
    } else {
        int k = 0;
        try {
            std::size_t used = 0;
            k = std::stoi(cmd.k, &used);
            if (used != cmd.k.size()) {
                k = 0;
            }
        } catch (const std::exception&) {
            k = 0;
        }
        if (k < 2 || k > n) {
            throw ParameterError("--k must be 'all' or an integer in 2.." + std::to_string(n) + ", got '" + cmd.k +
                                 "'");
        }
        levels.push_back(k);
    }

    const auto geometry = charge_geometry(f);
    json certificates = json::array();
    bool pass = true;
    for (int k : levels) {
        const ChargeLedger ledger = build_ledger(geometry, f.size(), k);
        CertificateReport cert;
        try {
            cert = verify_claims(ledger, f);
        } catch (const CertificateFailure& e) {
            cert = e.report();
            pass = false;
            std::cerr << "ucbench: " << e.what() << "\n";
        }
        json c = to_json(cert);
        c["records"] = ledger.records.size();
        certificates.push_back(std::move(c));
        if (!cmd.ledger.empty()) {
            write_text_file(ledger_path(cmd.ledger, k, levels.size() > 1), ledger.to_csv());
        }
    }
    json doc = provenance("charge", {{"input", cmd.input},
                                     {"k", cmd.k},
                                     {"ledger", cmd.ledger.empty() ? json(nullptr) : json(cmd.ledger)},
                                     {"eps", optional_number(eps)}});
    doc["family"] = family_summary(f);
    doc["certificates"] = std::move(certificates);
    doc["pass"] = pass;
    emit(doc, cmd.output);
    return pass ? kExitPass : kExitViolation;
}

// ------------------------------------------------------------------ verify

struct VerifyCmd {
    bool quick = false;
    std::uint64_t seed = 1;
};

int run_verify(const VerifyCmd& cmd) {
    std::cout << kToolName << " " << kVersion << " verify seed=" << cmd.seed << " quick=" << (cmd.quick ? 1 : 0)
              << std::endl;
    bool pass = true;
    AcceptanceOptions opts;
    opts.seed = cmd.seed;
    opts.quick = cmd.quick;
    for (const auto& r : run_acceptance(opts)) {
        std::cout << format_line(r) << "\n";
        pass = pass && r.pass;
    }
    std::cout << (pass ? "all criteria passed" : "some criteria FAILED") << std::endl;
    return pass ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Union-complexity and intersection-graph bound workbench"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
    app.require_subcommand(1);

    GenerateCmd gen;
    auto* g = app.add_subcommand("generate", "Generate a validated family and write it as JSON");
    g->add_option("generator", gen.generator, "Family generator")
        ->required()
        ->check(CLI::IsMember({"random-discs", "common-point-discs", "lines-parabolas", "random-curves"}));
    g->add_option("--n", gen.params.n, "Number of members")->required();
    g->add_option("--seed", gen.params.seed, "Random seed")->capture_default_str();
    g->add_option("--k", gen.k, "Level for lines-parabolas")->capture_default_str();
    g->add_option("-o,--output", gen.output, "Output file (default: standard output)");
    g->add_option("--box-min", gen.params.box_min, "Disc centers: lower box corner")->capture_default_str();
    g->add_option("--box-max", gen.params.box_max, "Disc centers: upper box corner")->capture_default_str();
    g->add_option("--r-min", gen.params.r_min, "Smallest radius")->capture_default_str();
    g->add_option("--r-max", gen.params.r_max, "Largest radius")->capture_default_str();
    g->add_option("--margin", gen.params.margin, "Depth of the common point inside every disc")
        ->capture_default_str();
    g->add_option("--point-x", gen.point_x, "Common point x")->capture_default_str();
    g->add_option("--point-y", gen.point_y, "Common point y")->capture_default_str();
    g->add_option("--a-min-abs", gen.params.a_min_abs, "Curves: smallest |a| of a parabola")->capture_default_str();
    g->add_option("--a-max", gen.params.a_max, "Curves: largest |a|")->capture_default_str();
    g->add_option("--b-range", gen.params.b_range, "Curves: b uniform in [-range, range]")->capture_default_str();
    g->add_option("--c-range", gen.params.c_range, "Curves: c uniform in [-range, range]")->capture_default_str();
    g->add_option("--line-fraction", gen.params.line_fraction, "Curves: probability of a line")
        ->capture_default_str();
    g->add_option("--max-rounds", gen.params.max_rounds, "Re-sampling rounds before giving up")
        ->capture_default_str();
    gen.eps_opt = g->add_option("--eps", gen.eps, "Tolerance override (default 1e-9 x extent)");

    AnalyzeCmd an;
    auto* a = app.add_subcommand("analyze", "Graph statistics, depth profile and bound checks");
    a->add_option("file", an.input, "Family JSON file")->required();
    a->add_option("--c", an.c, "Union-complexity constant")->capture_default_str();
    a->add_option("--csv", an.csv, "Also write the depth profile as CSV");
    a->add_option("-o,--output", an.output, "Report file (default: standard output)");
    a->add_flag("--witness", an.witness, "Include a maximum clique");
    an.eps_opt = a->add_option("--eps", an.eps, "Re-validate with this tolerance");

    SampleCmd sm;
    auto* s = app.add_subcommand("sample", "Random-sample experiment with closed-form expectation");
    s->add_option("file", sm.input, "Discs family JSON file")->required();
    s->add_option("--p", sm.p, "Sampling probability, or 'auto' for 1/omega")->capture_default_str();
    s->add_option("--trials", sm.trials, "Monte Carlo trials")->capture_default_str();
    s->add_option("--seed", sm.seed, "Random seed")->capture_default_str();
    s->add_option("--c", sm.c, "Union-complexity constant")->capture_default_str();
    s->add_option("-o,--output", sm.output, "Report file (default: standard output)");
    sm.eps_opt = s->add_option("--eps", sm.eps, "Re-validate with this tolerance");

    ChargeCmd ch;
    auto* c = app.add_subcommand("charge", "Red/blue charging certificate for a curves family");
    c->add_option("file", ch.input, "Curves family JSON file")->required();
    c->add_option("--k", ch.k, "Level in 2..n, or 'all'")->capture_default_str();
    c->add_option("--ledger", ch.ledger, "Ledger CSV path (per-level files .k<k> with --k all)");
    c->add_option("-o,--output", ch.output, "Certificate file (default: standard output)");
    ch.eps_opt = c->add_option("--eps", ch.eps, "Re-validate with this tolerance");

    VerifyCmd vf;
    auto* v = app.add_subcommand("verify", "Run the acceptance suite");
    v->add_flag("--quick", vf.quick, "Smaller family counts");
    v->add_option("--seed", vf.seed, "Suite seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*g) {
            return run_generate(gen);
        }
        if (*a) {
            return run_analyze(an);
        }
        if (*s) {
            return run_sample(sm);
        }
        if (*c) {
            return run_charge(ch);
        }
        return run_verify(vf);
    } catch (const GenerationFailure& e) {
        std::cerr << "ucbench: generation failed: " << e.what() << "\n";
        return kExitGeneration;
    } catch (const CertificateFailure& e) {
        std::cerr << "ucbench: " << e.what() << "\n";
        return kExitViolation;
    } catch (const ucb::Error& e) {
        std::cerr << "ucbench: error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "ucbench: error: " << e.what() << "\n";
        return kExitUsage;
    }
}
