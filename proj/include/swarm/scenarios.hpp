#pragma once

#include "engine.hpp"
#include "classify.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace swarm {

struct UnknownScenario : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ---- position families --------------------------------------------------

inline Config general_positions(std::mt19937_64& rng, int n, double side = 10.0)
{
    std::uniform_real_distribution<double> u(0.0, side);
    Config P;
    for (int i = 0; i < n; ++i)
        P.push_back({u(rng), u(rng)});
    return P;
}

inline Config grid_positions(std::mt19937_64& rng, int n, int side = 4)
{
    std::uniform_int_distribution<int> u(0, side);
    Config P;
    for (int i = 0; i < n; ++i)
        P.push_back({double(u(rng)), double(u(rng))});
    return P;
}

inline Config collinear_positions(std::mt19937_64& rng, int n, bool distinct_reals = false)
{
    std::uniform_int_distribution<int> coin(0, 3);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::uniform_int_distribution<int> small(0, 8);
    Point2 origin{double(small(rng)), double(small(rng))};
    Point2 dir{1.0, 0.0};
    switch (coin(rng)) {
    case 0:
        break;
    case 1:
        dir = {0.0, 1.0};
        break;
    default: {
        const double a = u(rng) * std::numbers::pi / 5.0;
        dir = {std::cos(a), std::sin(a)};
        origin = {u(rng), u(rng)};
    }
    }
    const bool integers = !distinct_reals && coin(rng) < 2;
    std::vector<double> reals;
    while (static_cast<int>(reals.size()) < n) {
        const double r = integers ? double(small(rng)) : u(rng);
        if (distinct_reals && std::find(reals.begin(), reals.end(), r) != reals.end())
            continue;
        reals.push_back(r);
    }
    if (std::all_of(reals.begin(), reals.end(), [&](double r) { return r == reals[0]; }))
        reals[0] += 1.0;
    Config P;
    for (double r : reals)
        P.push_back(origin + r * dir);
    return P;
}

// Union of regular k-gon orbits around a common center, remaining robots at the center.
inline Config symmetric_positions(std::mt19937_64& rng, int n)
{
    std::uniform_int_distribution<int> kd(2, std::min(6, n));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int k = kd(rng);
    const Point2 c{1 + 8 * u(rng), 1 + 8 * u(rng)};
    Config P;
    const int layers = n / k;
    for (int l = 0; l < layers; ++l) {
        const double radius = 1.0 + 4.0 * u(rng);
        const double phase = 2.0 * std::numbers::pi * u(rng);
        for (int j = 0; j < k; ++j)
            P.push_back(c + rotate({radius, 0.0}, phase + 2.0 * std::numbers::pi * j / k));
    }
    while (static_cast<int>(P.size()) < n)
        P.push_back(c);
    return P;
}

// ---- random campaigns ---------------------------------------------------

struct CampaignSpec {
    int n_min = 4, n_max = 8;
    int f_min = 0, f_max = 2;
    std::string target = "psi_n_2";
    std::string family = "mixed"; // general, grid, collinear, symmetric, mixed
    SchedulerKind scheduler = SchedulerKind::seeded_fair;
    int bound_factor = 3; // seeded_fair bound = factor * n
    int crash_window = 20;
    int rounds = 10000;
    std::string verdict = "fc_po:2";
    std::uint64_t first_seed = 1;
    std::uint64_t seeds = 1000;
};

inline Config family_positions(const std::string& family, std::mt19937_64& rng, int n, std::uint64_t seed)
{
    std::string fam = family;
    if (fam == "mixed") {
        static const char* cycle[] = {"general", "grid", "symmetric", "collinear"};
        fam = cycle[seed % 4];
    }
    if (fam == "general")
        return general_positions(rng, n);
    if (fam == "grid")
        return grid_positions(rng, n);
    if (fam == "collinear")
        return collinear_positions(rng, n);
    if (fam == "symmetric")
        return symmetric_positions(rng, n);
    throw std::invalid_argument("unknown position family: " + family);
}

inline Scenario campaign_scenario(const CampaignSpec& spec, std::uint64_t seed)
{
    std::mt19937_64 rng(seed * 0x2545F4914F6CDD1DULL + 17);
    Scenario sc;
    sc.name = spec.target + "#" + std::to_string(seed);
    sc.n = std::uniform_int_distribution<int>(spec.n_min, spec.n_max)(rng);
    sc.positions = family_positions(spec.family, rng, sc.n, seed);
    sc.assign.assign(sc.n, spec.target);
    sc.frames.seed = rng();
    sc.scheduler.kind = spec.scheduler;
    sc.scheduler.seed = rng();
    sc.scheduler.bound = spec.bound_factor * sc.n;
    const int f = std::uniform_int_distribution<int>(spec.f_min, std::min(spec.f_max, sc.n))(rng);
    std::vector<int> ids(sc.n);
    for (int i = 0; i < sc.n; ++i)
        ids[i] = i;
    std::shuffle(ids.begin(), ids.end(), rng);
    for (int i = 0; i < f; ++i)
        sc.crashes[ids[i]] = std::uniform_int_distribution<int>(0, spec.crash_window)(rng);
    sc.rounds = spec.rounds;
    sc.verdict = spec.verdict;
    return sc;
}

inline std::vector<Scenario> random_campaign(const CampaignSpec& spec)
{
    std::vector<Scenario> out;
    for (std::uint64_t s = 0; s < spec.seeds; ++s)
        out.push_back(campaign_scenario(spec, spec.first_seed + s));
    return out;
}

// Runs f(i) for i in [0, count) on a pool of worker threads.
template <class F>
void parallel_for(std::size_t count, F f, unsigned workers = 0)
{
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;)
                f(i);
        });
    for (auto& t : pool)
        t.join();
}

// ---- corpus -------------------------------------------------------------

inline Config psi_quad_positions()
{
    // Interior angles 60, 80, 100, 120 degrees at p1..p4 (counter-clockwise).
    const double s3 = std::sqrt(3.0);
    const double a100 = 100.0 * std::numbers::pi / 180.0;
    const double u = s3 / std::sin(a100);
    return {{0.0, 0.0}, {4.0, 0.0}, {4.0 + u * std::cos(a100), s3}, {1.0, s3}};
}

inline Scenario t4020_fgon(std::uint64_t seed)
{
    std::mt19937_64 rng(seed * 7919 + 3);
    Scenario sc;
    sc.name = "t4020_fgon";
    sc.n = 5;
    sc.positions = general_positions(rng, 5);
    while (dist(sc.positions[0], sc.positions[1]) < 1.0)
        sc.positions[1] = general_positions(rng, 1)[0];
    sc.assign.assign(5, "cog");
    sc.crashes = {{0, 0}, {1, 0}};
    sc.frames.seed = rng();
    sc.scheduler = {SchedulerKind::seeded_fair, rng(), 15, {}, false};
    sc.rounds = 3000;
    sc.verdict = "fc:2";
    sc.expected = "pass";
    return sc;
}

inline Scenario gat_gathers(std::uint64_t seed)
{
    std::mt19937_64 rng(seed * 104729 + 11);
    Scenario sc;
    sc.name = "gat_gathers";
    sc.n = std::uniform_int_distribution<int>(3, 7)(rng);
    sc.positions = general_positions(rng, sc.n);
    sc.assign.assign(sc.n, "gat");
    sc.frames.seed = rng();
    sc.scheduler = {SchedulerKind::seeded_fair, rng(), 3 * sc.n, {}, false};
    sc.rounds = 1000;
    sc.verdict = "gathering";
    sc.expected = "pass";
    return sc;
}

inline Scenario gat_mix_stuck(std::uint64_t seed)
{
    std::mt19937_64 rng(seed * 1299709 + 5);
    Scenario sc;
    sc.name = "gat_mix_stuck";
    sc.n = std::uniform_int_distribution<int>(4, 8)(rng);
    sc.positions = collinear_positions(rng, sc.n, true);
    for (int i = 0; i < sc.n; ++i)
        sc.assign.push_back(i % 2 == 0 ? "gat" : "gat_prime");
    sc.frames.seed = rng();
    sc.scheduler.kind = SchedulerKind::fsync;
    sc.rounds = 200;
    sc.verdict = "gathering";
    sc.expected = "fail";
    return sc;
}

inline std::vector<std::string> corpus_names()
{
    return {"cog1_static", "psi7_split", "xi_mix_frozen", "tau_quad_frozen", "t4020_fgon", "gat_gathers",
            "gat_mix_stuck", "psi32_full", "psin2_full", "shrink_t_equilateral", "shrink_b3", "shrink_u3"};
}

inline Scenario build(const std::string& name, std::uint64_t seed = 1)
{
    Scenario sc;
    sc.name = name;
    sc.frames.seed = seed;
    sc.scheduler.seed = seed;
    if (name == "cog1_static") {
        sc.n = 2;
        sc.positions = {{0, 0}, {1, 0}};
        sc.assign.assign(2, "cog(alpha=1)");
        sc.scheduler.kind = SchedulerKind::seeded_fair;
        sc.rounds = 100;
        sc.verdict = "frozen";
        sc.expected = "frozen";
    } else if (name == "psi7_split") {
        const double h = std::sqrt(3.0) / 2;
        sc.n = 7;
        sc.positions = {{0, 0}, {1, 0}, {0.5, h}, {3, 0}, {4, 0}, {4, 1}, {3, 1}};
        sc.assign = {"phi_T", "phi_T", "phi_T", "phi_S", "phi_S", "phi_S", "phi_S"};
        sc.scheduler.kind = SchedulerKind::fsync;
        sc.rounds = 100;
        // Both shapes halve each round; these values make both freeze in the
        // same round once their sides are about 1e-9.
        sc.snap = 1e-10;
        sc.tolerances.eps_geo = 1e-12;
        sc.verdict = "convergence";
        sc.expected = "fail";
    } else if (name == "xi_mix_frozen") {
        sc.n = 4;
        sc.positions = {{0, 0}, {3.5, 0}, {5.5, 0}, {7, 0}};
        sc.assign = {"xi(alpha=0.5,n=4)", "xi_prime(alpha=0.5,n=4)", "xi(alpha=0.5,n=4)", "xi(alpha=0.5,n=4)"};
        sc.crashes = {{0, 0}, {3, 0}};
        sc.scheduler.kind = SchedulerKind::fsync;
        sc.rounds = 100;
        sc.verdict = "frozen";
        sc.expected = "frozen";
    } else if (name == "tau_quad_frozen") {
        sc.n = 4;
        sc.positions = psi_quad_positions();
        sc.assign = {"tau", "tau", "tau", "tau_prime"};
        sc.crashes = {{1, 0}, {2, 0}};
        sc.scheduler.kind = SchedulerKind::fsync;
        sc.rounds = 100;
        sc.verdict = "frozen";
        sc.expected = "frozen";
    } else if (name == "t4020_fgon") {
        return t4020_fgon(seed);
    } else if (name == "gat_gathers") {
        return gat_gathers(seed);
    } else if (name == "gat_mix_stuck") {
        return gat_mix_stuck(seed);
    } else if (name == "psi32_full") {
        CampaignSpec c;
        c.n_min = c.n_max = 3;
        c.target = "psi_3_2";
        c.family = "general";
        sc = campaign_scenario(c, seed);
        sc.name = name;
        sc.expected = "pass";
    } else if (name == "psin2_full") {
        sc = campaign_scenario(CampaignSpec{}, seed);
        sc.name = name;
        sc.expected = "pass";
    } else if (name == "shrink_t_equilateral") {
        // Two crashed vertices; the doubled vertex moves to the center.
        const double h = std::sqrt(3.0);
        sc.n = 4;
        sc.positions = {{0, 0}, {2, 0}, {1, h}, {1, h}};
        sc.assign.assign(4, "psi_n_2");
        sc.crashes = {{0, 0}, {1, 0}};
        sc.scheduler.kind = SchedulerKind::fsync;
        sc.rounds = 60;
        sc.verdict = "shrink";
        sc.expected = "pass";
    } else if (name == "shrink_b3") {
        // Crashed middle pair; both ends step to the inner midpoints each round.
        sc.n = 4;
        sc.positions = {{0, 0}, {1, 0}, {1, 0}, {2, 0}};
        sc.assign.assign(4, "psi_n_2");
        sc.crashes = {{1, 0}, {2, 0}};
        sc.scheduler.kind = SchedulerKind::fsync;
        sc.rounds = 60;
        sc.verdict = "shrink";
        sc.expected = "pass";
    } else if (name == "shrink_u3") {
        sc.n = 4;
        sc.positions = {{0, 0}, {0, 0}, {1, 0}, {3, 0}};
        sc.assign.assign(4, "psi_n_2");
        sc.crashes = {{2, 0}, {3, 0}};
        sc.scheduler.kind = SchedulerKind::fsync;
        sc.rounds = 60;
        sc.verdict = "shrink";
        sc.expected = "pass";
    } else {
        throw UnknownScenario("unknown scenario: " + name);
    }
    return sc;
}

} // namespace swarm
