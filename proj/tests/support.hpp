#pragma once

#include <swarm/scenarios.hpp>
#include <swarm/symmetry.hpp>
#include <swarm/targets.hpp>
#include <swarm/verdict.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace swarm::testing {

inline Config transform(const Config& P, double theta, double s, Point2 shift = {0, 0})
{
    Config out;
    for (const auto& p : P)
        out.push_back(s * rotate(p, theta) + shift);
    return out;
}

inline Config seen_from(const Config& P, std::size_t i)
{
    Config out;
    for (const auto& p : P)
        out.push_back(p - P[i]);
    return out;
}

inline Config psi7_config()
{
    const double h = std::sqrt(3.0) / 2;
    return {{0, 0}, {1, 0}, {0.5, h}, {3, 0}, {4, 0}, {4, 1}, {3, 1}};
}

inline Config psi_line_config() { return {{0, 0}, {3.5, 0}, {5.5, 0}, {7, 0}}; }

inline Config xi_star_config() { return {{0, 0}, {0.9, 0}, {1, 0}}; }

inline double log_uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
}

// Random configuration for the given target name, seen from one of its robots.
// Each function's own trigger configuration is drawn about a quarter of the time.
inline Config sample_for(const std::string& name, std::mt19937_64& rng, std::uint64_t i)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const bool special = u(rng) < 0.25;
    Config P;
    if (special && (name == "phi_T" || name == "phi_S"))
        P = psi7_config();
    else if (special && (name == "xi" || name == "xi_prime"))
        P = psi_line_config();
    else if (special && (name == "tau" || name == "tau_prime"))
        P = psi_quad_positions();
    else if (special && name == "xi_star_1_3")
        P = xi_star_config();
    else if (name == "psi_3_2" || name == "xi_star_1_3") {
        static const char* fams[] = {"general", "grid", "collinear"};
        P = family_positions(fams[i % 3], rng, 3, i);
    } else if (name == "ln_n_2") {
        P = collinear_positions(rng, std::uniform_int_distribution<int>(2, 8)(rng));
    } else {
        const int n = std::uniform_int_distribution<int>(name == "psi_n_2" ? 4 : 2, 8)(rng);
        P = family_positions("mixed", rng, n, i);
    }
    if (special)
        P = transform(P, 2 * std::numbers::pi * u(rng), log_uniform(rng, 0.1, 10.0), {u(rng), u(rng)});
    return seen_from(P, std::uniform_int_distribution<std::size_t>(0, P.size() - 1)(rng));
}

// Target specs covered by the library-invariant suite, with the name used for sampling.
inline std::vector<std::pair<std::string, std::string>> library_specs()
{
    return {{"cog(alpha=0)", "cog"},           {"cog(alpha=0.3)", "cog"},
            {"cog(alpha=0.7)", "cog"},         {"cog(alpha=1)", "cog"},
            {"phi_T", "phi_T"},                {"phi_S", "phi_S"},
            {"xi(alpha=0.5,n=4)", "xi"},       {"xi_prime(alpha=0.5,n=4)", "xi_prime"},
            {"xi_star_1_3", "xi_star_1_3"},    {"tau", "tau"},
            {"tau_prime", "tau_prime"},        {"psi_3_2", "psi_3_2"},
            {"psi_n_2", "psi_n_2"},            {"ln_n_2", "ln_n_2"},
            {"gat", "gat"},                    {"gat_prime", "gat_prime"}};
}

// Collinear snapshots that equal their own mirror image; LN is orientation
// dependent there, so mirror and rotation checks skip them.
inline bool self_mirror_line(const Config& Q)
{
    if (distinct(Q).size() < 2 || convex_hull(Q).kind != HullKind::segment)
        return false;
    return line_embed(Q).self_mirror;
}

inline bool rotation_checked(const TargetFn& fn, const Config& Q)
{
    if (fn.name == "psi_n_2")
        return !self_mirror_line(Q);
    return fn.frame_independent;
}

inline bool same_output(const TargetOutput& a, const TargetOutput& b, double tol)
{
    if (a.kind != b.kind)
        return false;
    return a.kind != TargetOutput::point || dist(a.p, b.p) <= tol;
}

inline TargetOutput map_output(TargetOutput o, double theta, double s)
{
    if (o.kind == TargetOutput::point)
        o.p = s * rotate(o.p, theta);
    return o;
}

// Random input for check_lemma_A1005: union of orbits of a rotation group of order k.
inline Config random_lemma_set(std::mt19937_64& rng)
{
    static const int ks[] = {2, 3, 4, 6};
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        const int k = ks[std::uniform_int_distribution<int>(0, 3)(rng)];
        const int max_orbits = 10 / k;
        const int orbits = std::uniform_int_distribution<int>(k == 2 ? 2 : 1, max_orbits)(rng);
        const Point2 c{10 * u(rng) - 5, 10 * u(rng) - 5};
        Config A;
        for (int o = 0; o < orbits; ++o) {
            const double r = 0.5 + 4.5 * u(rng);
            const double phase = 2 * std::numbers::pi * u(rng);
            for (int j = 0; j < k; ++j)
                A.push_back(c + rotate({r, 0.0}, phase + 2 * std::numbers::pi * j / k));
        }
        if (A.size() < 3 || distinct(A).size() != A.size() || convex_hull(A).kind != HullKind::polygon)
            continue;
        const auto part = rotation_group_order(A);
        if (part.k >= 2 && !part.center_orbit)
            return A;
    }
}

} // namespace swarm::testing
