#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace swarm {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
    friend Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
    friend bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }
};

using Config = std::vector<Point2>;

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double cross(Point2 o, Point2 a, Point2 b) { return cross(a - o, b - o); }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 rotate(Point2 a, double theta)
{
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}
inline Point2 midpoint(Point2 a, Point2 b) { return {(a.x + b.x) / 2, (a.y + b.y) / 2}; }

// Exact lexicographic order on coordinates.
inline bool lex_less(Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

struct Distinct {
    Point2 p;
    int mu = 0;
};

// Distinct points with multiplicities, ascending in lexicographic order.
inline std::vector<Distinct> distinct(const Config& P)
{
    Config s = P;
    std::sort(s.begin(), s.end(), lex_less);
    std::vector<Distinct> out;
    for (const auto& p : s) {
        if (!out.empty() && out.back().p == p)
            ++out.back().mu;
        else
            out.push_back({p, 1});
    }
    return out;
}

inline int multiplicity(const Config& P, Point2 q)
{
    return static_cast<int>(std::count(P.begin(), P.end(), q));
}

inline bool contains(const Config& P, Point2 q) { return std::find(P.begin(), P.end(), q) != P.end(); }

inline double diameter(const Config& P)
{
    double d = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t j = i + 1; j < P.size(); ++j)
            d = std::max(d, dist(P[i], P[j]));
    return d;
}

// Relative factor of the geometric tolerance, per thread. Scenarios may override it.
inline double& eps_factor()
{
    thread_local double f = 1e-9;
    return f;
}

class ToleranceScope {
public:
    explicit ToleranceScope(double factor) : saved_(eps_factor()) { eps_factor() = factor; }
    ~ToleranceScope() { eps_factor() = saved_; }
    ToleranceScope(const ToleranceScope&) = delete;
    ToleranceScope& operator=(const ToleranceScope&) = delete;

private:
    double saved_;
};

// The single geometric tolerance: the factor times the diameter, floored at 1.
inline double eps_geo(const Config& P) { return eps_factor() * std::max(diameter(P), 1.0); }

inline Point2 centroid(const Config& P)
{
    if (P.empty())
        throw std::invalid_argument("centroid of empty configuration");
    double x = 0.0, y = 0.0;
    for (const auto& p : P) {
        x += p.x;
        y += p.y;
    }
    const double n = static_cast<double>(P.size());
    return {x / n, y / n};
}

enum class HullKind { point, segment, polygon };

struct Hull {
    std::vector<Point2> vertices; // CCW for polygons
    HullKind kind = HullKind::point;
};

// Distance from q to the line through a and b (a != b).
inline double line_distance(Point2 a, Point2 b, Point2 q) { return std::abs(cross(a, b, q)) / dist(a, b); }

inline std::pair<Point2, Point2> farthest_pair(const std::vector<Point2>& pts)
{
    std::pair<Point2, Point2> best{pts.front(), pts.front()};
    double d = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (dist(pts[i], pts[j]) > d) {
                d = dist(pts[i], pts[j]);
                best = {pts[i], pts[j]};
            }
    return best;
}

inline Hull convex_hull(const Config& P, double eps)
{
    std::vector<Point2> pts;
    for (const auto& d : distinct(P))
        pts.push_back(d.p);
    Hull h;
    if (pts.size() == 1) {
        h.vertices = pts;
        return h;
    }
    auto [a, b] = farthest_pair(pts);
    bool linear = true;
    for (const auto& q : pts)
        if (line_distance(a, b, q) > eps) {
            linear = false;
            break;
        }
    if (linear) {
        if (lex_less(b, a))
            std::swap(a, b);
        h.kind = HullKind::segment;
        h.vertices = {a, b};
        return h;
    }
    // Andrew's monotone chain with an exact turn test.
    std::vector<Point2> out(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(out[k - 2], out[k - 1], pts[i]) <= 0)
            --k;
        out[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(out[k - 2], out[k - 1], pts[i - 1]) <= 0)
            --k;
        out[k++] = pts[i - 1];
    }
    out.resize(k - 1);
    if (out.size() < 3) {
        if (lex_less(b, a))
            std::swap(a, b);
        h.kind = HullKind::segment;
        h.vertices = {a, b};
        return h;
    }
    // Drop vertices within eps of the chord of their neighbours, closest first.
    while (out.size() > 3) {
        std::size_t best = 0;
        double bd = 1e300;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const Point2 a = out[(i + out.size() - 1) % out.size()], b = out[(i + 1) % out.size()];
            const double d = line_distance(a, b, out[i]);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        if (bd > eps)
            break;
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(best));
    }
    h.kind = HullKind::polygon;
    h.vertices = std::move(out);
    return h;
}

inline Hull convex_hull(const Config& P) { return convex_hull(P, eps_geo(P)); }

// Hull without dropping near-collinear vertices. Containment tests use it:
// several dropped vertices in a row can move the reduced hull inward by more than eps.
inline Hull exact_hull(const Config& P) { return convex_hull(P, 0.0); }

struct OutsideHull : std::runtime_error {
    OutsideHull() : std::runtime_error("point lies outside the convex hull") {}
};

// Smallest t with x in t*CH(P), where t*CH(P) = { t y + (1-t) g : y in CH(P) }.
inline double scale_of_point(const Config& P, Point2 x)
{
    const double eps = eps_geo(P);
    const Point2 g = centroid(P);
    const Hull h = convex_hull(P, eps);
    const Point2 d = x - g;
    const double len = norm(d);
    if (len == 0.0)
        return 0.0;
    if (h.kind == HullKind::point) {
        if (len > eps)
            throw OutsideHull();
        return 0.0;
    }
    double reach = 0.0; // distance from g to the boundary along d
    if (h.kind == HullKind::segment) {
        const Point2 a = h.vertices[0], b = h.vertices[1];
        if (line_distance(a, b, x) > eps)
            throw OutsideHull();
        const Point2 u = (b - a) / dist(a, b);
        const double s = dot(d, u);
        reach = s > 0 ? dot(b - g, u) : dot(g - a, u);
        if (reach <= 0.0)
            throw OutsideHull();
        const double t = std::abs(s) / reach;
        if (t > 1.0 + eps / reach)
            throw OutsideHull();
        return std::min(t, 1.0);
    }
    const Point2 u = d / len;
    const auto v = exact_hull(P).vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2 a = v[i], b = v[(i + 1) % v.size()];
        const Point2 e = b - a;
        const double den = cross(u, e);
        if (den == 0.0)
            continue;
        const double s = cross(a - g, e) / den;
        const double w = cross(a - g, u) / den;
        if (s > 0.0 && w >= -1e-12 && w <= 1.0 + 1e-12)
            reach = std::max(reach, s);
    }
    if (reach <= 0.0)
        throw OutsideHull();
    const double t = len / reach;
    if (t > 1.0 + eps / reach)
        throw OutsideHull();
    return std::min(t, 1.0);
}

struct Circle {
    Point2 center;
    double radius = 0.0;
};

inline Circle circle_from(Point2 a, Point2 b) { return {midpoint(a, b), dist(a, b) / 2}; }

inline Circle circle_from(Point2 a, Point2 b, Point2 c)
{
    const Point2 ab = b - a, ac = c - a;
    const double den = 2.0 * cross(ab, ac);
    const double scale = std::max({norm(ab), norm(ac), norm(c - b)});
    if (std::abs(den) <= 1e-14 * scale * scale) {
        // Collinear: diametral circle of the farthest pair.
        auto [p, q] = farthest_pair({a, b, c});
        return circle_from(p, q);
    }
    const double b2 = dot(ab, ab), c2 = dot(ac, ac);
    const Point2 off{(ac.y * b2 - ab.y * c2) / den, (ab.x * c2 - ac.x * b2) / den};
    return {a + off, norm(off)};
}

inline Circle smallest_enclosing_circle(const Config& P)
{
    if (P.empty())
        throw std::invalid_argument("circle of empty configuration");
    std::vector<Point2> pts;
    for (const auto& d : distinct(P))
        pts.push_back(d.p);
    const double eps = eps_geo(P) * 1e-3;
    auto inside = [eps](const Circle& c, Point2 p) { return dist(c.center, p) <= c.radius + eps; };
    Circle c{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (inside(c, pts[i]))
            continue;
        c = {pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (inside(c, pts[j]))
                continue;
            c = circle_from(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k)
                if (!inside(c, pts[k]))
                    c = circle_from(pts[i], pts[j], pts[k]);
        }
    }
    return c;
}

struct HullMetrics {
    double perimeter = 0.0;
    double diameter = 0.0;
    std::optional<double> lambda; // collinear configurations only
};

inline HullMetrics hull_metrics(const Config& P)
{
    const double eps = eps_geo(P);
    const Hull h = convex_hull(P, eps);
    HullMetrics m;
    m.diameter = diameter(P);
    switch (h.kind) {
    case HullKind::point:
        m.lambda = 0.0;
        break;
    case HullKind::segment: {
        const Point2 a = h.vertices[0], b = h.vertices[1];
        const double L = dist(a, b);
        m.perimeter = 2.0 * L;
        const Point2 u = (b - a) / L;
        double lam = 0.0;
        for (const auto& p : P) {
            const double s = dot(p - a, u);
            lam = std::max(lam, std::min(s, L - s));
        }
        m.lambda = lam;
        break;
    }
    case HullKind::polygon:
        for (std::size_t i = 0; i < h.vertices.size(); ++i)
            m.perimeter += dist(h.vertices[i], h.vertices[(i + 1) % h.vertices.size()]);
        break;
    }
    return m;
}

// Point-in-hull test with tolerance eps.
inline bool in_hull(const Hull& h, Point2 x, double eps)
{
    const auto& v = h.vertices;
    switch (h.kind) {
    case HullKind::point:
        return dist(v[0], x) <= eps;
    case HullKind::segment: {
        const Point2 a = v[0], b = v[1];
        const double L = dist(a, b);
        const double s = dot(x - a, (b - a) / L);
        return line_distance(a, b, x) <= eps && s >= -eps && s <= L + eps;
    }
    case HullKind::polygon:
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Point2 a = v[i], b = v[(i + 1) % v.size()];
            if (cross(a, b, x) < -eps * dist(a, b))
                return false;
        }
        return true;
    }
    return false;
}

} // namespace swarm
