#pragma once

#include "classify.hpp"
#include "geom.hpp"
#include "targets.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace swarm {

// Private similarity frame of a robot: local -> global is rotation by theta,
// then scaling, then translation to the robot's position.
struct Frame {
    double theta = 0.0;
    double scale = 1.0;

    Point2 to_local(Point2 self, Point2 g) const { return rotate(g - self, -theta) / scale; }
    Point2 to_global(Point2 self, Point2 l) const
    {
        if (l == Point2{0, 0})
            return self;
        return self + scale * rotate(l, theta);
    }
};

enum class FrameMode { fixed, per_activation };

inline Frame draw_frame(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> th(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> ls(std::log(0.1), std::log(10.0));
    const double theta = th(rng);
    return {theta, std::exp(ls(rng))};
}

inline std::vector<Frame> make_frames(int n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Frame> f;
    for (int i = 0; i < n; ++i)
        f.push_back(draw_frame(rng));
    return f;
}

struct FrameSpec {
    FrameMode mode = FrameMode::fixed;
    std::uint64_t seed = 1;
    std::vector<Frame> explicit_frames; // overrides the seed when non-empty
};

enum class SchedulerKind { fsync, central_round_robin, seeded_fair, scripted };

struct SchedulerSpec {
    SchedulerKind kind = SchedulerKind::fsync;
    std::uint64_t seed = 1;
    int bound = 0; // seeded_fair window; 0 means 2n
    std::vector<std::vector<int>> script;
    bool adversarial = false;
};

struct Tolerances {
    double eps_geo = 1e-9;
    double delta_conv = 1e-6;
    int window = 50;
};

struct Scenario {
    std::string name;
    int n = 0;
    Config positions;
    std::vector<std::string> assign; // target spec per robot
    FrameSpec frames;
    SchedulerSpec scheduler;
    std::map<int, int> crashes; // robot id -> round at which it stops
    int rounds = 100;
    double snap = 1e-9;
    std::string verdict;
    Tolerances tolerances;
    std::string expected; // pass, fail or frozen; empty when unspecified
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EngineInvariant : std::logic_error {
    using std::logic_error::logic_error;
};

class Scheduler {
public:
    Scheduler(const SchedulerSpec& spec, int n) : spec_(spec), n_(n), rng_(spec.seed), last_(n, -1)
    {
        if (spec_.kind == SchedulerKind::seeded_fair && spec_.bound <= 0)
            spec_.bound = 2 * n;
        if (spec_.kind == SchedulerKind::scripted) {
            if (spec_.script.empty())
                throw ConfigError("scripted scheduler needs a script");
            for (const auto& set : spec_.script)
                for (int id : set)
                    if (id < 0 || id >= n)
                        throw ConfigError("script names an unknown robot");
            if (!spec_.adversarial)
                for (int id = 0; id < n; ++id) {
                    bool seen = false;
                    for (const auto& set : spec_.script)
                        seen = seen || std::find(set.begin(), set.end(), id) != set.end();
                    if (!seen)
                        throw ConfigError("script never activates robot " + std::to_string(id));
                }
        }
    }

    std::vector<int> next(int t, const std::vector<bool>& live)
    {
        std::vector<int> act;
        switch (spec_.kind) {
        case SchedulerKind::fsync:
            for (int i = 0; i < n_; ++i)
                if (live[i])
                    act.push_back(i);
            break;
        case SchedulerKind::central_round_robin:
            for (int k = 0; k < n_; ++k) {
                const int i = (cursor_ + k) % n_;
                if (live[i]) {
                    act.push_back(i);
                    cursor_ = i + 1;
                    break;
                }
            }
            break;
        case SchedulerKind::seeded_fair: {
            std::bernoulli_distribution coin(0.5);
            for (int i = 0; i < n_; ++i) {
                const bool pick = coin(rng_);
                // Forced when idle for bound-1 rounds, so every window of bound rounds sees it.
                if (live[i] && (pick || t - last_[i] >= spec_.bound))
                    act.push_back(i);
            }
            break;
        }
        case SchedulerKind::scripted:
            for (int i : spec_.script[t % spec_.script.size()])
                if (live[i])
                    act.push_back(i);
            break;
        }
        for (int i : act)
            last_[i] = t;
        return act;
    }

private:
    SchedulerSpec spec_;
    int n_;
    std::mt19937_64 rng_;
    std::vector<int> last_;
    int cursor_ = 0;
};

struct RoundRecord {
    int t = 0;
    Config positions;          // P_t
    std::vector<int> activated; // robots whose move produced P_t
    std::vector<int> crashed;   // robots that stop at t
    std::string psi_type;       // n >= 4
    bool psi_also_s = false;    // tagged I while the S condition holds too
    std::string ln_type;        // collinear configurations
    std::string psi3_type;      // n = 3
    HullMetrics metrics;
    bool undefined_domain = false;
    bool containment_violation = false;
};

struct Trace {
    int n = 0;
    int horizon = 0;             // rounds requested
    std::optional<int> stationary_from; // later rounds repeat the last record
    std::vector<bool> faulty;
    std::vector<RoundRecord> rounds;
    bool undefined_domain = false;
    bool containment_violation = false;

    int last_round() const { return horizon; }
    const Config& positions_at(int t) const
    {
        const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(t), rounds.size() - 1);
        return rounds[i].positions;
    }
};

struct RobotState {
    Point2 position;
    Frame frame;
    std::optional<int> crashed_at;
    const TargetFn* fn = nullptr;
};

inline std::string psi3_label(const Config& P)
{
    static const char* names[] = {"G", "L", "T"};
    return names[psi3_type(P).tag];
}

inline void annotate(RoundRecord& r)
{
    const Config& P = r.positions;
    r.metrics = hull_metrics(P);
    if (P.size() == 3)
        r.psi3_type = psi3_label(P);
    if (P.size() >= 4) {
        const PsiNType t = psin_type(P);
        r.psi_type = psin_label(t);
        r.psi_also_s = t.also_s;
    }
    if (r.metrics.lambda) {
        // Types are translation invariant; embed from the first robot.
        Config Q;
        for (const auto& p : P)
            Q.push_back(p - P[0]);
        r.ln_type = tag_name(ln_type(line_embed(Q)).tag);
    }
}

struct StepResult {
    Config next;
    bool undefined_domain = false;
    bool containment_violation = false;
};

// One synchronous round for the given activated robots; all moves are rigid
// and simultaneous. Targets within snap_abs of an existing position, or of a
// target already placed this round, land on it exactly.
inline StepResult step(const Config& P, const std::vector<RobotState>& robots, const std::vector<int>& activated,
                       double snap_abs, const std::vector<Frame>* frames_override = nullptr)
{
    StepResult res{P, false, false};
    const auto D = distinct(P);
    const double eps = eps_geo(P);
    const Hull hull = exact_hull(P);
    std::vector<Point2> placed;
    for (int i : activated) {
        const RobotState& r = robots[i];
        if (r.crashed_at)
            throw EngineInvariant("crashed robot activated");
        const Frame f = frames_override ? (*frames_override)[i] : r.frame;
        Config Q;
        Q.reserve(P.size());
        for (const auto& p : P)
            Q.push_back(f.to_local(P[i], p));
        const TargetOutput out = (*r.fn)(Q);
        if (out.kind == TargetOutput::bottom)
            throw EngineInvariant("target function returned bottom on a self-centric snapshot");
        if (out.kind == TargetOutput::undefined_domain) {
            res.undefined_domain = true;
            continue;
        }
        Point2 g = f.to_global(P[i], out.p);
        double best = snap_abs;
        const Point2 raw = g;
        bool snapped = false;
        for (const auto& d : D) {
            const double dd = dist(d.p, raw);
            if (dd <= best) {
                best = dd;
                g = d.p;
                snapped = true;
            }
        }
        if (!snapped)
            for (const auto& q : placed) {
                const double dd = dist(q, raw);
                if (dd <= best) {
                    best = dd;
                    g = q;
                }
            }
        placed.push_back(g);
        if (!in_hull(hull, g, eps))
            res.containment_violation = true;
        res.next[i] = g;
    }
    return res;
}

struct RunOptions {
    bool early_stop = true; // stop once no live robot would move
    bool annotate = true;
};

inline Trace run(const Scenario& sc, const RunOptions& opt = {})
{
    if (sc.n <= 0 || static_cast<int>(sc.positions.size()) != sc.n)
        throw ConfigError("positions do not match n");
    if (static_cast<int>(sc.assign.size()) != sc.n)
        throw ConfigError("assignment does not match n");
    for (const auto& [id, t] : sc.crashes)
        if (id < 0 || id >= sc.n || t < 0)
            throw ConfigError("bad crash entry");
    ToleranceScope tol(sc.tolerances.eps_geo);

    std::map<std::string, TargetFn> fns;
    for (const auto& s : sc.assign)
        if (!fns.count(s))
            fns.emplace(s, make_target(s));

    std::vector<Frame> frames = sc.frames.explicit_frames;
    if (frames.empty())
        frames = make_frames(sc.n, sc.frames.seed);
    if (static_cast<int>(frames.size()) != sc.n)
        throw ConfigError("frame list does not match n");
    std::mt19937_64 frame_rng(sc.frames.seed ^ 0x9e3779b97f4a7c15ULL);

    std::vector<RobotState> robots(sc.n);
    for (int i = 0; i < sc.n; ++i)
        robots[i] = {sc.positions[i], frames[i], std::nullopt, &fns.at(sc.assign[i])};

    Trace tr;
    tr.n = sc.n;
    tr.horizon = sc.rounds;
    tr.faulty.assign(sc.n, false);
    for (const auto& [id, t] : sc.crashes)
        tr.faulty[id] = true;

    Scheduler sched(sc.scheduler, sc.n);
    const double snap_abs = sc.snap * diameter(sc.positions);
    Config P = sc.positions;

    auto record = [&](int t, std::vector<int> act, const StepResult* s) {
        RoundRecord r;
        r.t = t;
        r.positions = P;
        r.activated = std::move(act);
        for (const auto& [id, ct] : sc.crashes)
            if (ct == t)
                r.crashed.push_back(id);
        if (s) {
            r.undefined_domain = s->undefined_domain;
            r.containment_violation = s->containment_violation;
            tr.undefined_domain = tr.undefined_domain || s->undefined_domain;
            tr.containment_violation = tr.containment_violation || s->containment_violation;
        }
        if (opt.annotate)
            annotate(r);
        tr.rounds.push_back(std::move(r));
    };

    auto apply_crashes = [&](int t) {
        for (const auto& [id, ct] : sc.crashes)
            if (ct <= t && !robots[id].crashed_at)
                robots[id].crashed_at = ct;
    };

    apply_crashes(0);
    record(0, {}, nullptr);
    const bool fixed = sc.frames.mode == FrameMode::fixed;
    for (int t = 0; t < sc.rounds; ++t) {
        apply_crashes(t);
        std::vector<bool> live(sc.n);
        std::vector<int> all_live;
        for (int i = 0; i < sc.n; ++i) {
            live[i] = !robots[i].crashed_at;
            if (live[i])
                all_live.push_back(i);
        }
        bool pending_crash = false;
        for (const auto& [id, ct] : sc.crashes)
            pending_crash = pending_crash || ct > t;
        if (opt.early_stop && fixed && !pending_crash) {
            const StepResult probe = step(P, robots, all_live, snap_abs);
            if (probe.next == P && !probe.undefined_domain) {
                tr.stationary_from = t;
                break;
            }
        }
        const std::vector<int> act = sched.next(t, live);
        StepResult s;
        if (fixed) {
            s = step(P, robots, act, snap_abs);
        } else {
            std::vector<Frame> drawn = frames;
            for (int i : act)
                drawn[i] = draw_frame(frame_rng);
            s = step(P, robots, act, snap_abs, &drawn);
        }
        P = s.next;
        for (int i = 0; i < sc.n; ++i)
            robots[i].position = P[i];
        record(t + 1, act, &s);
    }
    return tr;
}

} // namespace swarm
