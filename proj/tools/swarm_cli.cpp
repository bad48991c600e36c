#include <swarm/io.hpp>
#include <swarm/scenarios.hpp>
#include <swarm/symmetry.hpp>
#include <swarm/verdict.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <regex>

using namespace swarm;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_error = 2;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::uint64_t default_seed()
{
    if (const char* s = std::getenv("SWARM_SEED"))
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw UsageError("SWARM_SEED is not an integer");
        }
    return 1;
}

std::pair<int, int> parse_range(const std::string& s)
{
    static const std::regex re(R"(^\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re))
        throw UsageError("bad range: " + s);
    const int a = std::stoi(m[1]);
    const int b = m[2].matched ? std::stoi(m[2]) : a;
    if (b < a)
        throw UsageError("empty range: " + s);
    return {a, b};
}

bool verdict_matches(const Verdict& v, const std::string& expected)
{
    return expected == "fail" ? !v.ok : v.ok;
}

// ---- run ----------------------------------------------------------------

struct RunArgs {
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string verdict;
};

int cmd_run(const RunArgs& a)
{
    Scenario sc;
    const bool is_file = std::filesystem::exists(a.scenario) || a.scenario.find('.') != std::string::npos ||
                         a.scenario.find('/') != std::string::npos;
    const std::uint64_t seed = a.seed.value_or(default_seed());
    if (is_file) {
        sc = load_scenario(a.scenario);
        if (a.seed) {
            sc.frames.seed = seed;
            sc.scheduler.seed = seed;
        }
    } else {
        sc = build(a.scenario, seed);
    }
    const Trace tr = run(sc);
    if (!a.out.empty()) {
        std::ofstream out(a.out);
        if (!out)
            throw ConfigError("cannot write " + a.out);
        write_trace(out, tr);
    }
    const std::string spec = a.verdict.empty() ? sc.verdict : a.verdict;
    std::printf("scenario %s: %d robots, %zu recorded rounds%s\n", sc.name.c_str(), sc.n, tr.rounds.size(),
                tr.stationary_from ? " (stationary after the last record)" : "");
    if (tr.undefined_domain)
        std::printf("flag: undefined_domain\n");
    if (tr.containment_violation)
        std::printf("flag: containment_violation\n");
    if (spec.empty())
        return exit_pass;
    const Verdict v = evaluate(tr, spec, sc.tolerances.delta_conv, sc.tolerances.window);
    std::printf("verdict %s: %s (%s; desk-scale evidence, not a proof)\n", spec.c_str(), v.ok ? "PASS" : "FAIL",
                v.detail.c_str());
    if (a.verdict.empty() && !sc.expected.empty()) {
        const bool match = verdict_matches(v, sc.expected);
        std::printf("expected outcome %s: %s\n", sc.expected.c_str(), match ? "matched" : "not matched");
        return match ? exit_pass : exit_fail;
    }
    return v.ok ? exit_pass : exit_fail;
}

// ---- fuzz ---------------------------------------------------------------

struct FuzzArgs {
    std::string n = "4..8";
    std::string f = "0..2";
    std::string target = "psi_n_2";
    int seeds = 100;
    std::uint64_t first_seed = 0;
    std::string verdict = "fc_po:2";
    std::string diagram = "none";
    std::string family;
    std::string scheduler = "seeded_fair";
    int rounds = 10000;
};

int cmd_fuzz(const FuzzArgs& a)
{
    if (a.seeds <= 0)
        throw UsageError("--seeds must be positive");
    if (a.diagram != "psi" && a.diagram != "ln" && a.diagram != "none")
        throw UsageError("--diagram must be psi, ln or none");
    make_target(a.target);
    if (!a.verdict.empty())
        parse_verdict(a.verdict);
    CampaignSpec spec;
    std::tie(spec.n_min, spec.n_max) = parse_range(a.n);
    std::tie(spec.f_min, spec.f_max) = parse_range(a.f);
    if (spec.n_min < 1)
        throw UsageError("--n must be positive");
    spec.target = a.target;
    spec.family = !a.family.empty() ? a.family : (a.diagram == "ln" ? "collinear" : "mixed");
    spec.scheduler = scheduler_kind(a.scheduler);
    spec.rounds = a.rounds;
    spec.verdict = a.verdict;
    spec.first_seed = a.first_seed ? a.first_seed : default_seed();
    spec.seeds = static_cast<std::uint64_t>(a.seeds);
    {
        std::mt19937_64 probe(0);
        family_positions(spec.family, probe, spec.n_min, 0);
    }

    struct Outcome {
        bool ok = true;
        std::string detail;
    };
    std::vector<Outcome> res(spec.seeds);
    parallel_for(spec.seeds, [&](std::size_t i) {
        const std::uint64_t seed = spec.first_seed + i;
        Outcome& o = res[i];
        try {
            const Scenario sc = campaign_scenario(spec, seed);
            const Trace tr = run(sc);
            if (!a.verdict.empty()) {
                const Verdict v = evaluate(tr, a.verdict, sc.tolerances.delta_conv, sc.tolerances.window);
                if (!v.ok) {
                    o = {false, a.verdict + ": " + v.detail};
                    return;
                }
            }
            if (a.diagram != "none") {
                const auto viol =
                    transition_conformance(tr, a.diagram == "psi" ? DiagramKind::psi : DiagramKind::ln);
                if (!viol.empty())
                    o = {false, "diagram violation " + viol[0].from + " -> " + viol[0].to + " at round " +
                                    std::to_string(viol[0].t)};
            }
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
    });
    std::size_t failed = 0;
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < res.size(); ++i)
        if (!res[i].ok) {
            ++failed;
            if (!first)
                first = i;
        }
    std::printf("fuzz %s: %zu passed, %zu failed of %zu seeds\n", a.target.c_str(), res.size() - failed, failed,
                res.size());
    if (first)
        std::printf("first failing seed %llu: %s\n", static_cast<unsigned long long>(spec.first_seed + *first),
                    res[*first].detail.c_str());
    return failed == 0 ? exit_pass : exit_fail;
}

// ---- scale --------------------------------------------------------------

struct ScaleArgs {
    std::string target;
    int samples = 1000;
    std::string family = "random";
    std::uint64_t seed = 0;
};

int cmd_scale(const ScaleArgs& a)
{
    const TargetFn fn = make_target(a.target);
    if (a.samples <= 0)
        throw UsageError("--samples must be positive");
    std::function<Config(std::size_t)> sampler;
    std::size_t N = static_cast<std::size_t>(a.samples);
    static const std::regex typel(R"(^typeL\(a=([^)]+)\)$)");
    std::smatch m;
    const std::uint64_t seed = a.seed ? a.seed : default_seed();
    if (std::regex_match(a.family, m, typel)) {
        const double av = std::stod(m[1]);
        sampler = [av](std::size_t) { return type_l_family(av); };
        N = 1;
    } else if (a.family == "random" || a.family == "general" || a.family == "grid" || a.family == "collinear" ||
               a.family == "symmetric" || a.family == "mixed") {
        const std::string fam = a.family == "random" ? "mixed" : a.family;
        sampler = [fam, seed](std::size_t i) {
            std::mt19937_64 rng(seed * 1000003 + i);
            const int n = std::uniform_int_distribution<int>(3, 8)(rng);
            Config P = family_positions(fam, rng, n, i);
            const Point2 self = P[std::uniform_int_distribution<int>(0, n - 1)(rng)];
            for (auto& p : P)
                p = p - self;
            return P;
        };
    } else {
        throw UsageError("unknown family: " + a.family);
    }
    const ScaleEstimate est = estimate_scale(fn, sampler, N);
    std::printf("alpha_hat %s = %.17g\n", fn.spec().c_str(), est.value);
    std::printf("witness:");
    for (const auto& p : est.witness)
        std::printf(" (%.17g, %.17g)", p.x, p.y);
    std::printf("\n");
    return exit_pass;
}

// ---- classify -----------------------------------------------------------

Config read_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open " + path);
    json j;
    try {
        in >> j;
        const json& list = j.is_object() ? j.at("positions") : j;
        Config P;
        for (const auto& p : list)
            P.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        if (P.empty())
            throw ConfigError("empty configuration");
        return P;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed configuration: ") + e.what());
    }
}

int cmd_classify(const std::string& path)
{
    const Config P = read_config(path);
    const Hull h = convex_hull(P);
    static const char* kinds[] = {"point", "segment", "polygon"};
    std::printf("robots: %zu, distinct points: %zu, hull: %s\n", P.size(), distinct(P).size(),
                kinds[static_cast<int>(h.kind)]);
    if (P.size() == 3)
        std::printf("psi3_type: %s\n", psi3_label(P).c_str());
    if (P.size() >= 4)
        std::printf("psin_type: %s\n", psin_label(psin_type(P)).c_str());
    if (h.kind != HullKind::polygon && distinct(P).size() > 1) {
        Config Q;
        for (const auto& p : P)
            Q.push_back(p - P[0]);
        const LineConfig lc = line_embed(Q);
        std::printf("ln_type: %s\n", tag_name(ln_type(lc).tag));
    }
    if (distinct(P).size() > 1) {
        const OrbitPartition part = rotation_group_order(P);
        std::printf("k_P: %d\nsigma: %d\n", part.k, symmetricity(P));
        std::printf("sec: center (%.17g, %.17g), radius %.17g\n", part.sec.center.x, part.sec.center.y,
                    part.sec.radius);
        std::printf("order (largest first):\n");
        for (const auto& o : succ_order(P, part)) {
            std::printf("  mu=%d r=%.6g:", o.mu, o.radius);
            for (const auto& p : o.points)
                std::printf(" (%.6g, %.6g)", p.x, p.y);
            std::printf("\n");
        }
    }
    return exit_pass;
}

// ---- corpus -------------------------------------------------------------

int cmd_corpus(const std::string& dir, std::uint64_t seed, bool list)
{
    if (list) {
        for (const auto& name : corpus_names())
            std::printf("%s\n", name.c_str());
        return exit_pass;
    }
    std::filesystem::create_directories(dir);
    for (const auto& name : corpus_names()) {
        const std::string path = (std::filesystem::path(dir) / (name + ".json")).string();
        save_scenario(build(name, seed), path);
        std::printf("wrote %s\n", path.c_str());
    }
    return exit_pass;
}

// ---- plot ---------------------------------------------------------------

int cmd_plot(const std::string& trace_path, const std::string& out_path, int every)
{
    if (every <= 0)
        throw UsageError("--every must be positive");
    std::ifstream in(trace_path);
    if (!in)
        throw ConfigError("cannot open " + trace_path);
    const Trace tr = read_trace(in);

    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const auto& r : tr.rounds)
        for (const auto& p : r.positions) {
            x0 = std::min(x0, p.x);
            y0 = std::min(y0, p.y);
            x1 = std::max(x1, p.x);
            y1 = std::max(y1, p.y);
        }
    const double span = std::max({x1 - x0, y1 - y0, 1e-12});
    const double size = 800.0, pad = 40.0;
    auto sx = [&](double x) { return pad + (x - x0) / span * (size - 2 * pad); };
    auto sy = [&](double y) { return size - pad - (y - y0) / span * (size - 2 * pad); };

    std::ofstream out(out_path);
    if (!out)
        throw ConfigError("cannot write " + out_path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
    out << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < tr.rounds.size(); i += static_cast<std::size_t>(every)) {
        const Hull h = convex_hull(tr.rounds[i].positions);
        out << "<polygon fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"0.7\" points=\"";
        for (const auto& v : h.vertices)
            out << sx(v.x) << ',' << sy(v.y) << ' ';
        out << "\"/>\n";
    }
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    for (int id = 0; id < tr.n; ++id) {
        const char* color = palette[id % 10];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
        for (const auto& r : tr.rounds)
            out << sx(r.positions[id].x) << ',' << sy(r.positions[id].y) << ' ';
        out << "\"/>\n";
        const Point2 s = tr.rounds.front().positions[id];
        const Point2 e = tr.rounds.back().positions[id];
        bool moved = false;
        for (const auto& r : tr.rounds)
            moved = moved || !(r.positions[id] == s);
        if (moved)
            out << "<circle cx=\"" << sx(e.x) << "\" cy=\"" << sy(e.y) << "\" r=\"4\" fill=\"" << color
                << "\"/>\n";
        else
            out << "<rect x=\"" << sx(e.x) - 4 << "\" y=\"" << sy(e.y) - 4
                << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"" << color << "\"/>\n";
    }
    for (const auto& r : tr.rounds)
        for (int id : r.crashed) {
            if (id < 0 || id >= tr.n)
                continue;
            const Point2 p = r.positions[id];
            const double cx = sx(p.x), cy = sy(p.y);
            out << "<path d=\"M" << cx - 6 << ',' << cy - 6 << " L" << cx + 6 << ',' << cy + 6 << " M" << cx - 6
                << ',' << cy + 6 << " L" << cx + 6 << ',' << cy - 6
                << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        }
    out << "</svg>\n";
    std::printf("wrote %s (%zu rounds)\n", out_path.c_str(), tr.rounds.size());
    return exit_pass;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Simulator for oblivious mobile robots with crash faults"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario file or corpus entry");
    run_cmd->add_option("--scenario", run_args.scenario, "scenario file or corpus name")->required();
    run_cmd->add_option("--seed", run_args.seed, "seed for frames and scheduler");
    run_cmd->add_option("--out", run_args.out, "trace output (JSON lines)");
    run_cmd->add_option("--verdict", run_args.verdict, "verdict spec overriding the scenario");

    FuzzArgs fuzz_args;
    auto* fuzz_cmd = app.add_subcommand("fuzz", "Run a seeded random campaign");
    fuzz_cmd->add_option("--n", fuzz_args.n, "robot count range A..B");
    fuzz_cmd->add_option("--f", fuzz_args.f, "crash count range A..B");
    fuzz_cmd->add_option("--target", fuzz_args.target, "target function spec");
    fuzz_cmd->add_option("--seeds", fuzz_args.seeds, "number of seeds");
    fuzz_cmd->add_option("--first-seed", fuzz_args.first_seed, "first seed (default SWARM_SEED or 1)");
    fuzz_cmd->add_option("--verdict", fuzz_args.verdict, "verdict spec, empty for none");
    fuzz_cmd->add_option("--diagram", fuzz_args.diagram, "psi, ln or none");
    fuzz_cmd->add_option("--family", fuzz_args.family, "general, grid, collinear, symmetric or mixed");
    fuzz_cmd->add_option("--scheduler", fuzz_args.scheduler, "fsync, central_round_robin or seeded_fair");
    fuzz_cmd->add_option("--rounds", fuzz_args.rounds, "rounds per execution");

    ScaleArgs scale_args;
    auto* scale_cmd = app.add_subcommand("scale", "Estimate the scale of a target function");
    scale_cmd->add_option("--target", scale_args.target, "target function spec")->required();
    scale_cmd->add_option("--samples", scale_args.samples, "number of sampled configurations");
    scale_cmd->add_option("--family", scale_args.family, "random, general, grid, collinear, symmetric or typeL(a=..)");
    scale_cmd->add_option("--seed", scale_args.seed, "sampling seed");

    std::string classify_path;
    auto* classify_cmd = app.add_subcommand("classify", "Classify a configuration file");
    classify_cmd->add_option("config", classify_path, "JSON list of [x,y] or object with positions")->required();

    std::string corpus_dir = "corpus";
    std::uint64_t corpus_seed = 1;
    bool corpus_list = false;
    auto* corpus_cmd = app.add_subcommand("corpus", "Write corpus entries as scenario files");
    corpus_cmd->add_option("--out", corpus_dir, "output directory");
    corpus_cmd->add_option("--seed", corpus_seed, "seed for seeded entries");
    corpus_cmd->add_flag("--list", corpus_list, "list names only");

    std::string plot_trace, plot_out = "trace.svg";
    int plot_every = 10;
    auto* plot_cmd = app.add_subcommand("plot", "Render a trace as SVG");
    plot_cmd->add_option("--trace", plot_trace, "trace file")->required();
    plot_cmd->add_option("--out", plot_out, "SVG output");
    plot_cmd->add_option("--every", plot_every, "draw the hull every K rounds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_error;
    }

    try {
        if (*run_cmd)
            return cmd_run(run_args);
        if (*fuzz_cmd)
            return cmd_fuzz(fuzz_args);
        if (*scale_cmd)
            return cmd_scale(scale_args);
        if (*classify_cmd)
            return cmd_classify(classify_path);
        if (*corpus_cmd)
            return cmd_corpus(corpus_dir, corpus_seed, corpus_list);
        if (*plot_cmd)
            return cmd_plot(plot_trace, plot_out, plot_every);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_error;
    }
    return exit_error;
}
