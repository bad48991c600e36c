#pragma once

#include "geom.hpp"

#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace swarm {

// Three-way comparisons returning -1, 0 or 1; tol = 0 gives exact comparison.
inline int compare(double a, double b, double tol = 0.0)
{
    if (std::abs(a - b) <= tol)
        return 0;
    return a < b ? -1 : 1;
}

inline int point_compare(Point2 a, Point2 b, double tol = 0.0)
{
    if (int c = compare(a.x, b.x, tol))
        return c;
    return compare(a.y, b.y, tol);
}

// Insertion sort keyed by a three-way comparison. Unlike std::sort it stays
// well defined when a tolerant comparison is not a strict weak order.
template <class T, class Cmp>
void insertion_sort(std::vector<T>& v, Cmp cmp)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t j = i; j > 0 && cmp(v[j - 1], v[j]) > 0; --j)
            std::swap(v[j - 1], v[j]);
}

inline void sort_points(Config& P, double tol = 0.0)
{
    insertion_sort(P, [tol](Point2 a, Point2 b) { return point_compare(a, b, tol); });
}

struct SizeMismatch : std::invalid_argument {
    SizeMismatch() : std::invalid_argument("multisets differ in size") {}
};

// Ascending-sorted multisets compared lexicographically.
inline int multiset_compare(Config A, Config B, double tol = 0.0)
{
    if (A.size() != B.size())
        throw SizeMismatch();
    sort_points(A, tol);
    sort_points(B, tol);
    for (std::size_t i = 0; i < A.size(); ++i)
        if (int c = point_compare(A[i], B[i], tol))
            return c;
    return 0;
}

struct Orbit {
    std::vector<Point2> points;
    int mu = 0;
    double radius = 0.0; // distance to o_P
    bool center = false;
};

struct OrbitPartition {
    int k = 0;
    Circle sec;
    std::vector<Orbit> orbits; // non-center orbits
    std::optional<Orbit> center_orbit;
};

inline std::vector<int> divisors_desc(int g)
{
    std::vector<int> d;
    for (int c = g; c >= 2; --c)
        if (g % c == 0)
            d.push_back(c);
    return d;
}

inline OrbitPartition rotation_group_order(const Config& P)
{
    OrbitPartition out;
    const auto D = distinct(P);
    out.sec = smallest_enclosing_circle(P);
    const Point2 o = out.sec.center;
    if (D.size() == 1) {
        out.center_orbit = Orbit{{D[0].p}, D[0].mu, 0.0, true};
        return out;
    }
    const double eps = eps_geo(P);
    std::vector<Distinct> rest;
    for (const auto& d : D) {
        if (dist(d.p, o) <= eps)
            out.center_orbit = Orbit{{d.p}, d.mu, 0.0, true};
        else
            rest.push_back(d);
    }

    std::vector<double> radii;
    for (const auto& d : rest)
        radii.push_back(dist(d.p, o));
    std::sort(radii.begin(), radii.end());
    int g = 0, run = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        ++run;
        if (i + 1 == radii.size() || radii[i + 1] - radii[i] > eps) {
            g = std::gcd(g, run);
            run = 0;
        }
    }

    auto image = [&](std::size_t i, double angle) -> std::optional<std::size_t> {
        const Point2 q = o + rotate(rest[i].p - o, angle);
        std::optional<std::size_t> best;
        double bd = eps;
        for (std::size_t j = 0; j < rest.size(); ++j) {
            const double dd = dist(rest[j].p, q);
            if (dd <= bd && rest[j].mu == rest[i].mu) {
                bd = dd;
                best = j;
            }
        }
        return best;
    };

    out.k = 1;
    for (int c : divisors_desc(g)) {
        const double angle = 2.0 * std::numbers::pi / c;
        bool ok = true;
        for (std::size_t i = 0; i < rest.size() && ok; ++i)
            ok = image(i, angle).has_value();
        if (ok) {
            out.k = c;
            break;
        }
    }

    std::vector<bool> seen(rest.size(), false);
    const double step = 2.0 * std::numbers::pi / out.k;
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (seen[i])
            continue;
        Orbit orb{{}, rest[i].mu, dist(rest[i].p, o), false};
        std::size_t j = i;
        for (int r = 0; r < out.k; ++r) {
            seen[j] = true;
            orb.points.push_back(rest[j].p);
            if (r + 1 < out.k)
                j = image(j, step).value_or(j);
        }
        out.orbits.push_back(std::move(orb));
    }
    return out;
}

struct CenterHasNoView : std::invalid_argument {
    CenterHasNoView() : std::invalid_argument("the center of the enclosing circle has no view") {}
};

// P expressed in the frame at q: x-axis toward o_P, unit length the SEC radius, right-handed.
inline Config view(const Config& P, Point2 q, const Circle& sec)
{
    const double eps = eps_geo(P);
    const double d = dist(q, sec.center);
    if (d <= eps)
        throw CenterHasNoView();
    const Point2 u = (sec.center - q) / d;
    const Point2 v{-u.y, u.x};
    Config V;
    V.reserve(P.size());
    for (const auto& p : P)
        V.push_back({dot(p - q, u) / sec.radius, dot(p - q, v) / sec.radius});
    sort_points(V, eps / sec.radius);
    return V;
}

inline Config view(const Config& P, Point2 q) { return view(P, q, smallest_enclosing_circle(P)); }

// Orbits of P in descending order of the relation "succ".
inline std::vector<Orbit> succ_order(const Config& P, const OrbitPartition& part)
{
    std::vector<Orbit> all = part.orbits;
    if (part.center_orbit)
        all.push_back(*part.center_orbit);
    const double eps = eps_geo(P);
    const double vtol = part.sec.radius > 0 ? eps / part.sec.radius : 0.0;
    // -1 when a precedes b, that is a is larger.
    auto cmp = [&](const Orbit& a, const Orbit& b) {
        if (a.mu != b.mu)
            return a.mu > b.mu ? -1 : 1;
        if (int c = compare(a.radius, b.radius, eps))
            return c;
        if (a.center || b.center)
            return 0;
        const int c = multiset_compare(view(P, a.points[0], part.sec), view(P, b.points[0], part.sec), vtol);
        return -c;
    };
    insertion_sort(all, cmp);
    return all;
}

inline std::vector<Orbit> succ_order(const Config& P) { return succ_order(P, rotation_group_order(P)); }

inline int symmetricity(const Config& P)
{
    const auto part = rotation_group_order(P);
    const int center_mu = part.center_orbit ? part.center_orbit->mu : 0;
    return std::gcd(part.k, center_mu);
}

struct PreconditionViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// For a non-linear set A with k_A >= 2 and o_A not in A, replacing any point
// of A by o_A leaves a configuration without rotational symmetry.
inline bool check_lemma_A1005(const Config& A)
{
    const auto D = distinct(A);
    if (D.size() != A.size())
        throw PreconditionViolated("A is not a set");
    if (convex_hull(A).kind != HullKind::polygon)
        throw PreconditionViolated("A is linear");
    const auto part = rotation_group_order(A);
    if (part.k < 2)
        throw PreconditionViolated("k_A < 2");
    if (part.center_orbit)
        throw PreconditionViolated("o_A lies in A");
    for (std::size_t i = 0; i < A.size(); ++i) {
        Config B = A;
        B[i] = part.sec.center;
        if (rotation_group_order(B).k != 1)
            return false;
    }
    return true;
}

} // namespace swarm
