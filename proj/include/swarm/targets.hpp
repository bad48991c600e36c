#pragma once

#include "classify.hpp"
#include "geom.hpp"
#include "symmetry.hpp"

#include <cstdio>
#include <functional>
#include <map>
#include <string>

namespace swarm {

struct TargetOutput {
    enum Kind { point, bottom, undefined_domain } kind = point;
    Point2 p;

    static TargetOutput at(Point2 q) { return {point, q}; }
    static TargetOutput stay() { return {point, {0, 0}}; }
};

using Params = std::map<std::string, double>;

struct TargetFn {
    std::string name;
    Params params;
    std::function<TargetOutput(const Config&)> rule;
    bool frame_independent = true;

    TargetOutput operator()(const Config& Q) const
    {
        if (!contains(Q, Point2{0, 0}))
            return {TargetOutput::bottom, {}};
        return rule(Q);
    }

    std::string spec() const
    {
        std::string s = name;
        if (params.empty())
            return s;
        s += '(';
        bool first = true;
        for (const auto& [k, v] : params) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%s%s=%.17g", first ? "" : ",", k.c_str(), v);
            s += buf;
            first = false;
        }
        return s + ')';
    }
};

// ---- rules on a local snapshot Q containing the origin ------------------

inline Point2 cog_alpha(double alpha, const Config& Q) { return (1.0 - alpha) * centroid(Q); }

inline Point2 phi_part(bool triangle_side, const Config& Q)
{
    if (auto split = detect_psi7(Q)) {
        const Config& own = triangle_side ? split->T : split->S;
        if (contains(own, Point2{0, 0}))
            return centroid(own) / 2.0;
    }
    return centroid(Q);
}

inline Point2 xi_rule(bool prime, double alpha, int n, const Config& Q)
{
    const Point2 o{0, 0};
    if (static_cast<int>(Q.size()) == n)
        if (auto r = detect_psi_plus(Q, alpha)) {
            if (r->a == o)
                return prime ? o : r->b;
            if (r->b == o)
                return prime ? alpha * r->p1 + (1.0 - alpha) * centroid(Q) : o;
        }
    return centroid(Q);
}

inline Point2 xi_star_1_3(const Config& Q)
{
    if (Q.size() == 3 && distinct(Q).size() == 3) {
        const double eps = eps_geo(Q);
        const Hull h = convex_hull(Q, eps);
        if (h.kind == HullKind::segment) {
            Config s = sort_along(Q, h.vertices[0], h.vertices[1]);
            for (int flip = 0; flip < 2; ++flip) {
                if (flip)
                    std::swap(s[0], s[2]);
                const double L = dist(s[0], s[2]);
                if (std::abs(dist(s[0], s[1]) - 0.9 * L) <= eps && std::abs(dist(s[1], s[2]) - 0.1 * L) <= eps)
                    return s[0] == Point2{0, 0} ? s[2] : centroid(Q);
            }
        }
    }
    return centroid(Q);
}

inline Point2 tau_rule(bool prime, const Config& Q)
{
    if (distinct(Q).size() <= 2)
        return {0, 0};
    if (auto p = detect_psi_quad(Q))
        return prime ? (*p)[3] : (*p)[0];
    return centroid(Q);
}

inline Point2 psi_3_2(const Config& Q)
{
    const Psi3Type t = psi3_type(Q);
    const Point2 o{0, 0};
    switch (t.tag) {
    case Psi3Type::G:
        return o;
    case Psi3Type::L:
        return t.p[1] == o ? t.p[0] / 2.0 : t.p[1] / 2.0;
    case Psi3Type::T:
        for (int i = 0; i < 3; ++i)
            if (t.p[i] == o)
                return t.p[(i + 1) % 3] / 2.0;
    }
    return o;
}

// Whether b[0] precedes b[m-1] in the order "succ" of the line configuration.
inline bool left_end_larger(const LineConfig& lc)
{
    Config X;
    for (double r : lc.reals)
        X.push_back({r, 0.0});
    const Point2 left{lc.b.front(), 0.0}, right{lc.b.back(), 0.0};
    for (const auto& orb : succ_order(X))
        for (const auto& p : orb.points) {
            if (p == left)
                return true;
            if (p == right)
                return false;
        }
    return true;
}

inline double ln_u4(const LineConfig& lc)
{
    const auto& b = lc.b;
    const auto& mu = lc.mu;
    if (mu[0] < mu[3])
        return -ln_u4(lc.mirrored());
    if (mu[0] >= mu[2])
        return b[0];
    if (mu[2] >= 3)
        return b[2] == 0.0 ? b[0] : 0.0;
    if (b[1] == 0.0 || b[2] == 0.0)
        return b[0];
    return 0.0;
}

// Target on the embedded line, as a real.
inline double ln_real(const LineConfig& lc)
{
    const auto& b = lc.b;
    const int m = static_cast<int>(b.size());
    const int j = lc.j_star + 1;
    const LnType t = ln_type(lc);
    switch (t.tag) {
    case LnType::G:
        return 0.0;
    case LnType::B:
        return j <= (m + 1) / 2 ? b[0] : b[m - 1];
    case LnType::B3:
        return j <= 2 ? (b[0] + b[1]) / 2 : (b[1] + b[2]) / 2;
    case LnType::B4:
        return j <= 2 ? (b[0] + b[1]) / 2 : (b[2] + b[3]) / 2;
    case LnType::B5:
        return j <= 3 ? b[1] : b[3];
    case LnType::B6:
        return j <= 3 ? b[1] : b[4];
    case LnType::U:
        return left_end_larger(lc) ? b[0] : b[m - 1];
    case LnType::U3: {
        const double M = (b[0] + b[2]) / 2;
        const bool left = b[1] < M - lc.eps || (std::abs(b[1] - M) <= lc.eps && lc.mu[0] > lc.mu[2]);
        return left ? (2 * b[0] + b[1]) / 3 : (b[1] + 2 * b[2]) / 3;
    }
    case LnType::W:
        return t.w_clause == 'a' ? b[1] : b[2];
    case LnType::U4:
        return ln_u4(lc);
    }
    return 0.0;
}

inline Point2 ln_n_2(const Config& Q)
{
    const LineConfig lc = line_embed(Q);
    const double r = ln_real(lc);
    return r == 0.0 ? Point2{0, 0} : lc.to_point(r);
}

inline Point2 psi_n_2(const Config& Q)
{
    const PsiNType t = psin_type(Q);
    switch (t.tag) {
    case PsiNType::G:
        return {0, 0};
    case PsiNType::L:
        return ln_n_2(Q);
    case PsiNType::T:
    case PsiNType::I:
    case PsiNType::S:
        return *t.witness;
    case PsiNType::Z: {
        const auto part = rotation_group_order(Q);
        if (part.k >= 2)
            return part.sec.center;
        return succ_order(Q, part).front().points.front();
    }
    }
    return {0, 0};
}

inline TargetOutput gat_rule(bool prime, const Config& Q)
{
    const auto D = distinct(Q);
    int multiples = 0;
    Point2 p;
    for (const auto& d : D)
        if (d.mu > 1) {
            ++multiples;
            p = d.p;
        }
    if (multiples == 1)
        return TargetOutput::at(p);
    if (multiples > 1)
        return {TargetOutput::undefined_domain, {}};
    const auto part = rotation_group_order(Q);
    if (part.k > 1)
        return TargetOutput::at(part.sec.center);
    const auto order = succ_order(Q, part);
    return TargetOutput::at(prime ? order.back().points.front() : order.front().points.front());
}

// ---- registry -----------------------------------------------------------

struct UnknownTarget : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Splits "name(k=v,k=v)" into the name and its numeric parameters.
inline std::pair<std::string, Params> parse_target_spec(const std::string& spec)
{
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    const auto open = spec.find('(');
    if (open == std::string::npos)
        return {trim(spec), {}};
    if (spec.back() != ')')
        throw UnknownTarget("malformed target spec: " + spec);
    Params params;
    const std::string body = spec.substr(open + 1, spec.size() - open - 2);
    std::size_t pos = 0;
    while (pos < body.size()) {
        auto comma = body.find(',', pos);
        if (comma == std::string::npos)
            comma = body.size();
        const std::string item = body.substr(pos, comma - pos);
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw UnknownTarget("malformed parameter in: " + spec);
        try {
            params[trim(item.substr(0, eq))] = std::stod(item.substr(eq + 1));
        } catch (const std::logic_error&) {
            throw UnknownTarget("malformed parameter in: " + spec);
        }
        pos = comma + 1;
    }
    return {trim(spec.substr(0, open)), params};
}

inline TargetFn make_target(const std::string& spec)
{
    auto [name, params] = parse_target_spec(spec);
    auto get = [&](const char* key, std::optional<double> fallback = std::nullopt) {
        auto it = params.find(key);
        if (it != params.end())
            return it->second;
        if (!fallback)
            throw UnknownTarget(name + " needs parameter " + key);
        params[key] = *fallback;
        return *fallback;
    };
    auto point = [](auto f) {
        return [f](const Config& Q) { return TargetOutput::at(f(Q)); };
    };
    TargetFn fn;
    if (name == "cog" || name == "cog_alpha") {
        const double a = get("alpha", 0.0);
        if (a < 0.0 || a > 1.0)
            throw UnknownTarget("alpha must lie in [0,1]");
        name = "cog";
        fn.rule = point([a](const Config& Q) { return cog_alpha(a, Q); });
    } else if (name == "phi_T" || name == "phi_S") {
        const bool tri = name == "phi_T";
        fn.rule = point([tri](const Config& Q) { return phi_part(tri, Q); });
    } else if (name == "xi" || name == "xi_prime") {
        const double a = get("alpha");
        const int n = static_cast<int>(get("n"));
        if (a <= 0.0 || a >= 1.0 || n < 4)
            throw UnknownTarget(name + " needs 0 < alpha < 1 and n >= 4");
        const bool prime = name == "xi_prime";
        fn.rule = point([=](const Config& Q) { return xi_rule(prime, a, n, Q); });
    } else if (name == "xi_1_n" || name == "xi_prime_1_n") {
        const int n = static_cast<int>(get("n"));
        if (n < 3)
            throw UnknownTarget(name + " needs n >= 3");
        const bool prime = name == "xi_prime_1_n";
        fn.rule = point([=](const Config& Q) { return n == 3 ? xi_star_1_3(Q) : xi_rule(prime, 1.0, n, Q); });
    } else if (name == "xi_star_1_3") {
        fn.rule = point(xi_star_1_3);
    } else if (name == "tau" || name == "tau_prime") {
        const bool prime = name == "tau_prime";
        fn.rule = point([prime](const Config& Q) { return tau_rule(prime, Q); });
    } else if (name == "psi_3_2") {
        fn.rule = point(psi_3_2);
        fn.frame_independent = false;
    } else if (name == "psi_n_2") {
        fn.rule = point(psi_n_2);
    } else if (name == "ln_n_2") {
        fn.rule = point(ln_n_2);
        fn.frame_independent = false;
    } else if (name == "gat" || name == "gat_prime") {
        const bool prime = name == "gat_prime";
        fn.rule = [prime](const Config& Q) { return gat_rule(prime, Q); };
    } else {
        throw UnknownTarget("unknown target function: " + name);
    }
    fn.name = name;
    fn.params = params;
    return fn;
}

inline std::vector<std::string> target_names()
{
    return {"cog", "phi_T", "phi_S", "xi", "xi_prime", "xi_star_1_3", "xi_1_n", "xi_prime_1_n",
            "tau", "tau_prime", "psi_3_2", "psi_n_2", "ln_n_2", "gat", "gat_prime"};
}

// ---- scale estimation ---------------------------------------------------

struct ScaleEstimate {
    double value = 0.0;
    Config witness;
};

// Lower bound on the scale: the largest observed scale over the samples.
inline ScaleEstimate estimate_scale(const TargetFn& fn, const std::function<Config(std::size_t)>& sampler,
                                    std::size_t N)
{
    ScaleEstimate best;
    for (std::size_t i = 0; i < N; ++i) {
        const Config Q = sampler(i);
        const TargetOutput out = fn(Q);
        if (out.kind != TargetOutput::point)
            continue;
        const double t = scale_of_point(Q, out.p);
        if (best.witness.empty() || t > best.value) {
            best.value = t;
            best.witness = Q;
        }
    }
    return best;
}

// Collinear triple with the observer in the middle: dist(p1,p3) = 1, dist(p1,p2) = a.
inline Config type_l_family(double a) { return {{a, 0.0}, {0.0, 0.0}, {a - 1.0, 0.0}}; }

} // namespace swarm
