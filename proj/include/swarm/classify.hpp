#pragma once

#include "geom.hpp"
#include "symmetry.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace swarm {

struct BadArity : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotCollinear : std::invalid_argument {
    NotCollinear() : std::invalid_argument("configuration is not collinear") {}
};

// ---- three robots -------------------------------------------------------

// Points ordered by their projection on the direction a -> b.
inline Config sort_along(Config P, Point2 a, Point2 b)
{
    const Point2 u = b - a;
    std::stable_sort(P.begin(), P.end(), [&](Point2 p, Point2 q) { return dot(p - a, u) < dot(q - a, u); });
    return P;
}

struct Psi3Type {
    enum Tag { G, L, T } tag = G;
    std::array<Point2, 3> p{}; // L: p[0] > p[2]; T: counter-clockwise
};

inline Psi3Type psi3_type(const Config& P)
{
    if (P.size() != 3)
        throw BadArity("psi3_type needs exactly three points");
    Psi3Type r;
    if (distinct(P).size() < 3)
        return r;
    const Hull h = convex_hull(P);
    if (h.kind == HullKind::segment) {
        r.tag = Psi3Type::L;
        Config s = sort_along(P, h.vertices[0], h.vertices[1]);
        if (lex_less(s[0], s[2]))
            std::swap(s[0], s[2]);
        r.p = {s[0], s[1], s[2]};
        return r;
    }
    r.tag = Psi3Type::T;
    r.p = {h.vertices[0], h.vertices[1], h.vertices[2]};
    return r;
}

// ---- n >= 4 robots ------------------------------------------------------

struct PsiNType {
    enum Tag { G, L, T, I, S, Z } tag = G;
    bool equilateral = false;      // for T
    std::optional<Point2> witness; // o_P for T(a) and I, M_P for T(b) and S
    bool also_s = false;           // tagged I, but M_P is in P as well (then o_P = M_P)
};

inline const char* tag_name(PsiNType::Tag t)
{
    static const char* names[] = {"G", "L", "T", "I", "S", "Z"};
    return names[t];
}

// Trace label; T splits into Ta (equilateral) and Tb.
inline std::string psin_label(const PsiNType& t)
{
    if (t.tag == PsiNType::T)
        return t.equilateral ? "Ta" : "Tb";
    return tag_name(t.tag);
}

// Midpoint of the longest side of a CCW triangle. With two longest sides the
// one following the shortest side counter-clockwise is used. Empty when
// equilateral.
inline std::optional<Point2> longest_side_midpoint(const std::array<Point2, 3>& v, double eps)
{
    std::array<double, 3> len{};
    for (int i = 0; i < 3; ++i)
        len[i] = dist(v[i], v[(i + 1) % 3]);
    const double mx = std::max({len[0], len[1], len[2]});
    int longest = 0, side = -1;
    for (int i = 0; i < 3; ++i)
        if (len[i] >= mx - eps) {
            ++longest;
            side = i;
        }
    if (longest == 3)
        return std::nullopt;
    if (longest == 2) {
        int shortest = 0;
        for (int i = 1; i < 3; ++i)
            if (len[i] < len[shortest])
                shortest = i;
        side = (shortest + 1) % 3;
    }
    return midpoint(v[side], v[(side + 1) % 3]);
}

inline std::optional<Point2> find_point(const std::vector<Distinct>& D, Point2 q, double eps)
{
    for (const auto& d : D)
        if (dist(d.p, q) <= eps)
            return d.p;
    return std::nullopt;
}

inline PsiNType psin_type(const Config& P)
{
    if (P.size() < 4)
        throw BadArity("psin_type needs at least four points");
    PsiNType r;
    const auto D = distinct(P);
    if (D.size() <= 2)
        return r;
    const double eps = eps_geo(P);
    const Hull h = convex_hull(P, eps);
    if (h.kind != HullKind::polygon) {
        r.tag = PsiNType::L;
        return r;
    }
    const bool triangle = h.vertices.size() == 3;
    if (D.size() == 3 && triangle) {
        r.tag = PsiNType::T;
        const std::array<Point2, 3> v{h.vertices[0], h.vertices[1], h.vertices[2]};
        const auto m = longest_side_midpoint(v, eps);
        r.equilateral = !m;
        r.witness = m ? *m : smallest_enclosing_circle(P).center;
        return r;
    }
    if (D.size() == 4 && triangle) {
        const Point2 o = smallest_enclosing_circle(P).center;
        const std::array<Point2, 3> v{h.vertices[0], h.vertices[1], h.vertices[2]};
        const auto m = longest_side_midpoint(v, eps);
        if (auto q = find_point(D, o, eps)) {
            r.tag = PsiNType::I;
            r.witness = *q;
            r.also_s = m && find_point(D, *m, eps).has_value();
            return r;
        }
        if (m)
            if (auto q = find_point(D, *m, eps)) {
                r.tag = PsiNType::S;
                r.witness = *q;
                return r;
            }
    }
    r.tag = PsiNType::Z;
    return r;
}

// ---- line embedding -----------------------------------------------------

struct LineConfig {
    std::vector<double> reals; // sorted, contains 0
    Point2 dir{1.0, 0.0};      // a real r sits at r * dir
    std::vector<double> b;     // distinct values, increasing
    std::vector<int> mu;       // multiplicity of each b
    int j_star = 0;            // 0-based index with b[j_star] == 0
    bool symmetric = false;    // the reals are symmetric about their midpoint
    bool self_mirror = false;  // reals == -reals
    double eps = 1e-9;

    Point2 to_point(double r) const { return r * dir; }

    LineConfig mirrored() const
    {
        LineConfig m = *this;
        m.dir = -1.0 * dir;
        m.reals.clear();
        for (auto it = reals.rbegin(); it != reals.rend(); ++it)
            m.reals.push_back(-*it);
        m.b.clear();
        m.mu.clear();
        for (std::size_t i = b.size(); i-- > 0;) {
            m.b.push_back(-b[i]);
            m.mu.push_back(mu[i]);
        }
        m.j_star = static_cast<int>(b.size()) - 1 - j_star;
        return m;
    }
};

inline LineConfig line_from_reals(std::vector<double> reals, Point2 dir, double eps)
{
    LineConfig lc;
    std::sort(reals.begin(), reals.end());
    lc.reals = reals;
    lc.dir = dir;
    lc.eps = eps;
    for (double r : reals) {
        if (!lc.b.empty() && lc.b.back() == r)
            ++lc.mu.back();
        else {
            lc.b.push_back(r);
            lc.mu.push_back(1);
        }
    }
    for (std::size_t i = 0; i < lc.b.size(); ++i)
        if (lc.b[i] == 0.0)
            lc.j_star = static_cast<int>(i);
    return lc;
}

inline LineConfig line_embed(const Config& P)
{
    if (!contains(P, Point2{0, 0}))
        throw std::invalid_argument("line_embed needs the origin in the configuration");
    const double eps = eps_geo(P);
    std::vector<Point2> pts;
    for (const auto& d : distinct(P))
        pts.push_back(d.p);
    if (pts.size() == 1)
        return line_from_reals(std::vector<double>(P.size(), 0.0), {1.0, 0.0}, eps);
    // Same line test as convex_hull: the farthest pair spans the line.
    const auto [a, b] = farthest_pair(pts);
    for (const auto& p : pts)
        if (line_distance(a, b, p) > eps)
            throw NotCollinear();
    const Point2 u = (b - a) / dist(a, b);

    // One real per distinct point, so exact coincidence carries over.
    std::vector<double> reals;
    for (const auto& p : P)
        reals.push_back(p == Point2{0, 0} ? 0.0 : dot(p, u));
    std::vector<double> fwd = reals, bwd;
    for (double r : reals)
        bwd.push_back(-r);
    std::sort(fwd.begin(), fwd.end());
    std::sort(bwd.begin(), bwd.end());
    auto lex = [eps](const std::vector<double>& x, const std::vector<double>& y, bool from_start) {
        int c = 0;
        for (std::size_t i = 0; i < x.size() && c == 0; ++i)
            c = from_start ? compare(x[i] - x[0], y[i] - y[0], eps) : compare(x[i], y[i], eps);
        return c;
    };
    // Orientation from the shape alone, so every robot picks the same one.
    // Mirror-symmetric shapes fall back to the observer's position, and a
    // robot at the center of symmetry to its local frame.
    const int shape = lex(fwd, bwd, true);
    const int seen = lex(fwd, bwd, false);
    bool flip = shape < 0;
    if (shape == 0)
        flip = seen != 0 ? seen < 0 : point_compare(u, -1.0 * u) < 0;
    LineConfig lc = flip ? line_from_reals(bwd, -1.0 * u, eps) : line_from_reals(fwd, u, eps);
    lc.symmetric = shape == 0;
    lc.self_mirror = shape == 0 && seen == 0;
    return lc;
}

// ---- LN types -----------------------------------------------------------

struct LnType {
    enum Tag { G, B3, B4, B5, B6, B, U3, W, U4, U } tag = G;
    char u4_case = 0;   // 'a', 'b' or 'c' for U4
    char w_clause = 0;  // 'a' or 'b' for W
};

inline const char* tag_name(LnType::Tag t)
{
    static const char* names[] = {"G", "B3", "B4", "B5", "B6", "B", "U3", "W", "U4", "U"};
    return names[t];
}

// 1-D mirror symmetry about the midpoint, preserving multiplicities.
inline int line_k(const LineConfig& lc)
{
    const std::size_t m = lc.b.size();
    if (m == 1)
        return 0;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = m - 1 - i;
        if (lc.mu[i] != lc.mu[j])
            return 1;
        if (std::abs((lc.b[i] - lc.b[0]) - (lc.b[m - 1] - lc.b[j])) > lc.eps)
            return 1;
    }
    return 2;
}

inline char w_clause(const LineConfig& lc)
{
    const auto& b = lc.b;
    const double M = (b[0] + b[3]) / 2;
    if (std::abs(2 * (b[1] - b[0]) - (b[2] - b[1])) <= lc.eps && b[2] <= M + lc.eps)
        return 'a';
    if (std::abs(2 * (b[3] - b[2]) - (b[2] - b[1])) <= lc.eps && b[1] >= M - lc.eps)
        return 'b';
    return 0;
}

inline char u4_case(const LineConfig& lc)
{
    const auto& mu = lc.mu;
    if (mu[0] < mu[3])
        return u4_case(lc.mirrored());
    if (mu[0] >= mu[2])
        return 'a';
    if (mu[2] >= 3)
        return 'b';
    return 'c';
}

inline LnType ln_type(const LineConfig& lc)
{
    LnType t;
    const std::size_t m = lc.b.size();
    if (m <= 2)
        return t;
    const int k = line_k(lc);
    if (k == 2) {
        static const LnType::Tag sym[] = {LnType::B3, LnType::B4, LnType::B5, LnType::B6};
        t.tag = m <= 6 ? sym[m - 3] : LnType::B;
        return t;
    }
    if (m == 3)
        t.tag = LnType::U3;
    else if (m == 4) {
        if (char c = w_clause(lc)) {
            t.tag = LnType::W;
            t.w_clause = c;
        } else {
            t.tag = LnType::U4;
            t.u4_case = u4_case(lc);
        }
    } else
        t.tag = LnType::U;
    return t;
}

// ---- condition detectors ------------------------------------------------

inline bool is_equilateral(const std::array<Point2, 3>& v, double eps, double side)
{
    for (int i = 0; i < 3; ++i)
        if (std::abs(dist(v[i], v[(i + 1) % 3]) - side) > eps)
            return false;
    return side > eps;
}

inline bool is_square(Config q, double eps, double side)
{
    const Point2 c = centroid(q);
    std::sort(q.begin(), q.end(), [c](Point2 a, Point2 b) {
        return std::atan2(a.y - c.y, a.x - c.x) < std::atan2(b.y - c.y, b.x - c.x);
    });
    for (int i = 0; i < 4; ++i)
        if (std::abs(dist(q[i], q[(i + 1) % 4]) - side) > eps)
            return false;
    const double diag = side * std::sqrt(2.0);
    return side > eps && std::abs(dist(q[0], q[2]) - diag) <= eps && std::abs(dist(q[1], q[3]) - diag) <= eps;
}

// Separating-axis test for two convex polygons given as point sets.
inline bool hulls_disjoint(const Config& A, const Config& B, double eps)
{
    auto separated_by_edges_of = [eps](const Config& X, const Config& Y) {
        const Hull h = convex_hull(X);
        const auto& v = h.vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Point2 a = v[i], b = v[(i + 1) % v.size()];
            bool all_out = true;
            for (const auto& y : Y)
                if (cross(a, b, y) >= -eps * dist(a, b)) {
                    all_out = false;
                    break;
                }
            if (all_out)
                return true;
        }
        return false;
    };
    return separated_by_edges_of(A, B) || separated_by_edges_of(B, A);
}

struct Psi7Split {
    Config T, S;
};

inline std::optional<Psi7Split> detect_psi7(const Config& P)
{
    if (P.size() != 7 || distinct(P).size() != 7)
        return std::nullopt;
    const double eps = eps_geo(P);
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            for (int k = j + 1; k < 7; ++k) {
                const std::array<Point2, 3> t{P[i], P[j], P[k]};
                const double side = dist(P[i], P[j]);
                if (!is_equilateral(t, eps, side))
                    continue;
                Config S;
                for (int r = 0; r < 7; ++r)
                    if (r != i && r != j && r != k)
                        S.push_back(P[r]);
                Config T{t.begin(), t.end()};
                if (is_square(S, eps, side) && hulls_disjoint(T, S, eps))
                    return Psi7Split{T, S};
            }
    return std::nullopt;
}

// Spacing of the two middle points relative to L for the collinear pattern.
inline double psi_plus_gap(double alpha, int n)
{
    if (n % 2 == 0)
        return alpha * n / (2 * (alpha + n - 1));
    return ((2 * alpha - 1) * n + (1 - alpha)) / (2 * (alpha * (n + 1) - 1));
}

struct PsiPlusRoles {
    Point2 p1, a, b, last; // a = p_{l+1}, b = p_{l+2}
};

inline std::optional<PsiPlusRoles> detect_psi_plus(const Config& P, double alpha)
{
    const int n = static_cast<int>(P.size());
    if (n < 4)
        return std::nullopt;
    const int l = (n - 2) / 2, l2 = n - 2 - l;
    const auto D = distinct(P);
    if (D.size() != 4)
        return std::nullopt;
    const double eps = eps_geo(P);
    const Hull h = convex_hull(P, eps);
    if (h.kind != HullKind::segment)
        return std::nullopt;
    const Point2 u = h.vertices[1] - h.vertices[0];
    std::array<Distinct, 4> sorted{D[0], D[1], D[2], D[3]};
    std::sort(sorted.begin(), sorted.end(), [&](const Distinct& x, const Distinct& y) { return dot(x.p, u) < dot(y.p, u); });
    const double gap = psi_plus_gap(alpha, n);
    for (int flip = 0; flip < 2; ++flip) {
        std::array<Distinct, 4> q = sorted;
        if (flip)
            std::reverse(q.begin(), q.end());
        if (q[0].mu != l || q[3].mu != l2 || q[1].mu != 1 || q[2].mu != 1)
            continue;
        const double L = dist(q[0].p, q[3].p);
        if (std::abs(dist(q[0].p, q[1].p) - L / 2) > eps)
            continue;
        if (std::abs(dist(q[1].p, q[2].p) - gap * L) > eps)
            continue;
        if (dist(q[0].p, q[2].p) >= L - eps)
            continue;
        return PsiPlusRoles{q[0].p, q[1].p, q[2].p, q[3].p};
    }
    return std::nullopt;
}

inline std::optional<std::array<Point2, 4>> detect_psi_quad(const Config& P)
{
    const auto D = distinct(P);
    if (D.size() != 4)
        return std::nullopt;
    const Hull h = convex_hull(P);
    if (h.kind != HullKind::polygon || h.vertices.size() != 4)
        return std::nullopt;
    const auto& v = h.vertices;
    std::array<double, 4> ang{};
    for (int i = 0; i < 4; ++i) {
        const Point2 a = v[(i + 3) % 4] - v[i], b = v[(i + 1) % 4] - v[i];
        ang[i] = std::atan2(std::abs(cross(a, b)), dot(a, b));
    }
    const int s = static_cast<int>(std::min_element(ang.begin(), ang.end()) - ang.begin());
    const double tol = 1e-9;
    std::array<Point2, 4> out{};
    for (int i = 0; i < 4; ++i) {
        out[i] = v[(s + i) % 4];
        if (i > 0 && !(ang[(s + i) % 4] > ang[(s + i - 1) % 4] + tol))
            return std::nullopt;
    }
    return out;
}

} // namespace swarm
