#pragma once

#include "engine.hpp"
#include "geom.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace swarm {

struct Cluster {
    Point2 center;
    std::vector<int> members;
};

struct ClusterReport {
    bool ok = false;
    std::vector<Cluster> clusters;
    double delta = 0.0;
    int window = 0;
    std::string reason;
};

// Greedy radius-delta clustering of the final positions of the chosen robots,
// plus a stability check over the trailing window.
inline ClusterReport cluster_final(const Trace& tr, double delta, int window, int k_max,
                                   const std::vector<int>& subset)
{
    ClusterReport rep;
    rep.delta = delta;
    rep.window = window;
    const int T = tr.last_round();
    if (T + 1 < window) {
        rep.reason = "trace shorter than the window";
        return rep;
    }
    const Config& fin = tr.positions_at(T);
    std::vector<bool> taken(tr.n, false);
    for (int i : subset) {
        if (taken[i])
            continue;
        Cluster c{fin[i], {}};
        for (int j : subset)
            if (!taken[j] && dist(fin[j], c.center) <= delta) {
                taken[j] = true;
                c.members.push_back(j);
            }
        rep.clusters.push_back(std::move(c));
    }
    if (static_cast<int>(rep.clusters.size()) > k_max) {
        rep.reason = std::to_string(rep.clusters.size()) + " clusters, at most " + std::to_string(k_max) + " allowed";
        return rep;
    }
    const int first = T - window + 1;
    const int last_recorded = static_cast<int>(tr.rounds.size()) - 1;
    for (int t = first; t <= std::min(T, last_recorded); ++t) {
        const Config& P = tr.positions_at(t);
        for (const auto& c : rep.clusters)
            for (int i : c.members)
                if (dist(P[i], c.center) > delta) {
                    rep.reason = "robot " + std::to_string(i) + " leaves its cluster at round " + std::to_string(t);
                    return rep;
                }
    }
    rep.ok = true;
    return rep;
}

enum class Problem { convergence, gathering, fc, fc_po, fc_cp, frozen };

struct ProblemSpec {
    Problem kind = Problem::convergence;
    int f = 0;
};

struct Verdict {
    bool ok = false;
    std::string detail;
    ClusterReport report;
};

inline std::vector<int> robot_ids(int n, const std::vector<bool>* faulty = nullptr)
{
    std::vector<int> ids;
    for (int i = 0; i < n; ++i)
        if (!faulty || !(*faulty)[i])
            ids.push_back(i);
    return ids;
}

inline bool all_coincide(const Config& P)
{
    for (const auto& p : P)
        if (!(p == P[0]))
            return false;
    return true;
}

inline Verdict check_problem(const Trace& tr, ProblemSpec prob, const std::set<int>& faulty, double delta, int window)
{
    Verdict v;
    // An explicit faulty set overrides the crash schedule recorded in the trace.
    std::vector<bool> bad = tr.faulty;
    if (!faulty.empty()) {
        bad.assign(tr.n, false);
        for (int i : faulty)
            bad[i] = true;
    }
    switch (prob.kind) {
    case Problem::convergence:
        v.report = cluster_final(tr, delta, window, 1, robot_ids(tr.n));
        v.ok = v.report.ok;
        v.detail = v.ok ? "all robots converge to one point" : v.report.reason;
        break;
    case Problem::gathering:
        for (const auto& r : tr.rounds)
            if (all_coincide(r.positions)) {
                v.ok = true;
                v.detail = "all robots coincide at round " + std::to_string(r.t);
                return v;
            }
        v.detail = "robots never coincide";
        break;
    case Problem::fc:
        v.report = cluster_final(tr, delta, window, 1, robot_ids(tr.n, &bad));
        v.ok = v.report.ok;
        v.detail = v.ok ? "non-faulty robots converge to one point" : v.report.reason;
        break;
    case Problem::fc_po:
        v.report = cluster_final(tr, delta, window, prob.f, robot_ids(tr.n));
        v.ok = v.report.ok;
        v.detail = v.ok ? "all robots converge to at most f points" : v.report.reason;
        break;
    case Problem::fc_cp: {
        // Collapse delta-close hull vertices of the final configuration, then
        // require every robot to stay within delta of that hull, and some robot
        // near each vertex, over the window.
        const int T = tr.last_round();
        const Config& fin = tr.positions_at(T);
        const Hull h = convex_hull(fin, delta);
        Config verts;
        for (const auto& p : h.vertices) {
            bool near = false;
            for (const auto& q : verts)
                near = near || dist(p, q) <= delta;
            if (!near)
                verts.push_back(p);
        }
        if (static_cast<int>(verts.size()) > prob.f) {
            v.detail = "hull has " + std::to_string(verts.size()) + " vertices, at most " + std::to_string(prob.f) +
                       " allowed";
            return v;
        }
        const Hull vh = convex_hull(verts, delta);
        const int last_recorded = static_cast<int>(tr.rounds.size()) - 1;
        for (int t = std::max(0, T - window + 1); t <= std::min(T, last_recorded); ++t) {
            const Config& P = tr.positions_at(t);
            for (const auto& p : P)
                if (!in_hull(vh, p, delta)) {
                    v.detail = "hull not stable at round " + std::to_string(t);
                    return v;
                }
            for (const auto& q : verts) {
                bool near = false;
                for (const auto& p : P)
                    near = near || dist(p, q) <= delta;
                if (!near) {
                    v.detail = "no robot near a hull vertex at round " + std::to_string(t);
                    return v;
                }
            }
        }
        v.ok = true;
        v.detail = "hull converges to a polygon with at most f vertices";
        break;
    }
    case Problem::frozen:
        for (const auto& r : tr.rounds)
            if (!(r.positions == tr.rounds.front().positions)) {
                v.detail = "configuration changes at round " + std::to_string(r.t);
                return v;
            }
        v.ok = true;
        v.detail = "configuration is frozen";
        break;
    }
    return v;
}

// ---- transition diagrams ------------------------------------------------

enum class DiagramKind { psi, ln };

using Diagram = std::map<std::string, std::set<std::string>>;

inline const Diagram& diagram(DiagramKind kind)
{
    static const Diagram psi = {
        {"Z", {"G", "L", "Ta", "Tb", "I", "S", "Z"}},
        {"Ta", {"G", "L", "Ta", "Tb", "I"}},
        {"Tb", {"G", "L", "Ta", "Tb", "S"}},
        {"I", {"G", "L", "Ta", "Tb", "I"}},
        {"S", {"G", "L", "Ta", "Tb", "S"}},
        {"L", {"G", "L"}},
        {"G", {"G"}},
    };
    static const Diagram ln = {
        {"G", {"G"}},
        {"B", {"G", "B3", "B4", "B5", "B6", "B", "U3", "W", "U4", "U"}},
        {"B3", {"G", "B3", "B4", "B5", "U3", "U4", "U"}},
        {"B4", {"G", "B4", "B6", "U3", "U4", "U"}},
        {"B5", {"G", "B3", "B4", "B5", "U3", "U4", "U"}},
        {"B6", {"G", "B4", "B6", "U3", "W", "U4", "U"}},
        {"U", {"G", "U3", "W", "U4", "U"}},
        {"U3", {"G", "U3", "W"}},
        {"W", {"G", "U3", "W"}},
        {"U4", {"G", "U3", "U4"}},
    };
    return kind == DiagramKind::psi ? psi : ln;
}

struct Violation {
    int t = 0; // round of the later configuration
    std::string from, to;
};

inline bool same_configuration(Config a, Config b)
{
    std::sort(a.begin(), a.end(), lex_less);
    std::sort(b.begin(), b.end(), lex_less);
    return a == b;
}

inline const std::string& type_of(const RoundRecord& r, DiagramKind kind)
{
    return kind == DiagramKind::psi ? r.psi_type : r.ln_type;
}

// Labels a round may carry. A configuration tagged I that also meets the S
// condition may play either role.
inline std::vector<std::string> labels_of(const RoundRecord& r, DiagramKind kind)
{
    std::vector<std::string> out{type_of(r, kind)};
    if (kind == DiagramKind::psi && r.psi_also_s)
        out.push_back("S");
    return out;
}

// Consecutive non-stutter configurations must follow the diagram.
inline std::vector<Violation> transition_conformance(const Trace& tr, DiagramKind kind)
{
    std::vector<Violation> out;
    const Diagram& d = diagram(kind);
    for (std::size_t i = 1; i < tr.rounds.size(); ++i) {
        const auto& a = tr.rounds[i - 1];
        const auto& b = tr.rounds[i];
        if (same_configuration(a.positions, b.positions))
            continue;
        const std::string &from = type_of(a, kind), &to = type_of(b, kind);
        if (from.empty() && to.empty())
            continue;
        bool ok = false;
        for (const auto& f : labels_of(a, kind))
            for (const auto& g : labels_of(b, kind)) {
                auto it = d.find(f);
                ok = ok || (it != d.end() && it->second.count(g));
            }
        if (!ok)
            out.push_back({b.t, from, to});
    }
    return out;
}

// Rounds tagged I where the S condition held as well.
inline std::vector<int> ambiguous_is_rounds(const Trace& tr)
{
    std::vector<int> out;
    for (const auto& r : tr.rounds)
        if (r.psi_also_s)
            out.push_back(r.t);
    return out;
}

// ---- shrink rates -------------------------------------------------------

struct ShrinkSample {
    int t = 0;
    double ratio = 0.0;
    std::string kind;
};

inline std::vector<ShrinkSample> shrink_rates(const Trace& tr)
{
    std::vector<ShrinkSample> out;
    std::vector<const RoundRecord*> seq;
    for (const auto& r : tr.rounds)
        if (seq.empty() || !same_configuration(seq.back()->positions, r.positions))
            seq.push_back(&r);
    // Ratios of quantities near rounding level carry no information; sample
    // only while the measured quantity is at least 1e-6 of the diameter.
    auto measurable = [](double q, const RoundRecord& r) { return q >= 1e-6 * r.metrics.diameter && q > 0; };
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const RoundRecord &a = *seq[i - 1], &b = *seq[i];
        if (a.psi_type == "Ta" && (b.psi_type == "Ta" || b.psi_type == "Tb"))
            out.push_back({b.t, b.metrics.perimeter / a.metrics.perimeter, "T_eq->T"});
        if (a.metrics.lambda && b.metrics.lambda && measurable(*a.metrics.lambda, a)) {
            const double lam = *b.metrics.lambda / *a.metrics.lambda;
            if (a.ln_type == "B3" && b.ln_type == "B3")
                out.push_back({b.t, b.metrics.perimeter / a.metrics.perimeter, "B3->B3"});
            if (a.ln_type == "B4" && b.ln_type == "B4")
                out.push_back({b.t, lam, "B4->B4"});
            if (a.ln_type == "U3" && b.ln_type == "U3")
                out.push_back({b.t, lam, "U3->U3"});
            if (a.ln_type == "W" && b.ln_type == "W")
                out.push_back({b.t, lam, "W->W"});
        }
    }
    // Two consecutive T S+ T loops starting from a non-equilateral triangle.
    std::vector<std::size_t> t_idx;
    for (std::size_t i = 0; i < seq.size(); ++i)
        if (seq[i]->psi_type == "Ta" || seq[i]->psi_type == "Tb")
            t_idx.push_back(i);
    auto s_loop = [&](std::size_t a, std::size_t b) {
        if (b <= a + 1)
            return false;
        for (std::size_t k = a + 1; k < b; ++k)
            if (seq[k]->psi_type != "S")
                return false;
        return true;
    };
    for (std::size_t k = 0; k + 2 < t_idx.size(); ++k) {
        const std::size_t a = t_idx[k], m = t_idx[k + 1], b = t_idx[k + 2];
        if (seq[a]->psi_type == "Tb" && seq[m]->psi_type == "Tb" && s_loop(a, m) && s_loop(m, b))
            out.push_back({seq[b]->t, seq[b]->metrics.perimeter / seq[a]->metrics.perimeter, "TS+TS+T"});
    }
    return out;
}

// Upper bound (and exact value where stated) for each shrink kind.
struct ShrinkBound {
    double bound;
    bool exact;
};

inline ShrinkBound shrink_bound(const std::string& kind)
{
    if (kind == "T_eq->T")
        return {(2 * std::sqrt(3.0) + 3) / 9, true};
    if (kind == "B3->B3" || kind == "B4->B4")
        return {0.5, true};
    if (kind == "U3->U3")
        return {2.0 / 3.0, false};
    if (kind == "W->W")
        return {1.0, true};
    return {5.0 / 6.0, false};
}

inline bool shrink_ok(const ShrinkSample& s, double tol = 1e-9)
{
    const ShrinkBound b = shrink_bound(s.kind);
    return b.exact ? std::abs(s.ratio - b.bound) <= tol : s.ratio <= b.bound + tol;
}

// ---- verdict spec strings -----------------------------------------------

struct VerdictSpec {
    enum Kind { problem, transitions, shrink } kind = problem;
    ProblemSpec problem_spec;
    DiagramKind diagram_kind = DiagramKind::psi;
};

inline VerdictSpec parse_verdict(const std::string& s)
{
    VerdictSpec v;
    auto with_f = [&](const std::string& prefix, Problem p) {
        if (s.rfind(prefix + ":", 0) != 0)
            return false;
        v.problem_spec = {p, std::stoi(s.substr(prefix.size() + 1))};
        return true;
    };
    if (s == "convergence")
        v.problem_spec = {Problem::convergence, 1};
    else if (s == "gathering")
        v.problem_spec = {Problem::gathering, 1};
    else if (s == "frozen")
        v.problem_spec = {Problem::frozen, 0};
    else if (with_f("fc_po", Problem::fc_po) || with_f("fc_cp", Problem::fc_cp) || with_f("fc", Problem::fc))
        ;
    else if (s == "transitions:psi") {
        v.kind = VerdictSpec::transitions;
        v.diagram_kind = DiagramKind::psi;
    } else if (s == "transitions:ln") {
        v.kind = VerdictSpec::transitions;
        v.diagram_kind = DiagramKind::ln;
    } else if (s == "shrink")
        v.kind = VerdictSpec::shrink;
    else
        throw std::invalid_argument("unknown verdict spec: " + s);
    return v;
}

inline Verdict evaluate(const Trace& tr, const std::string& spec, double delta, int window)
{
    const VerdictSpec vs = parse_verdict(spec);
    Verdict v;
    switch (vs.kind) {
    case VerdictSpec::problem:
        return check_problem(tr, vs.problem_spec, {}, delta, window);
    case VerdictSpec::transitions: {
        const auto viol = transition_conformance(tr, vs.diagram_kind);
        v.ok = viol.empty();
        const auto amb = ambiguous_is_rounds(tr);
        v.detail = v.ok ? "no diagram violations" + (vs.diagram_kind == DiagramKind::psi && !amb.empty()
                                                         ? ", " + std::to_string(amb.size()) + " rounds both I and S"
                                                         : std::string())
                        : "violation " + viol[0].from + " -> " + viol[0].to + " at round " + std::to_string(viol[0].t);
        return v;
    }
    case VerdictSpec::shrink: {
        const auto samples = shrink_rates(tr);
        v.ok = true;
        v.detail = std::to_string(samples.size()) + " shrink samples within bounds";
        for (const auto& s : samples)
            if (!shrink_ok(s)) {
                v.ok = false;
                v.detail = s.kind + " ratio " + std::to_string(s.ratio) + " at round " + std::to_string(s.t);
                break;
            }
        return v;
    }
    }
    return v;
}

} // namespace swarm
