#pragma once

#include "engine.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace swarm {

using nlohmann::json;

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline const char* scheduler_name(SchedulerKind k)
{
    switch (k) {
    case SchedulerKind::fsync:
        return "fsync";
    case SchedulerKind::central_round_robin:
        return "central_round_robin";
    case SchedulerKind::seeded_fair:
        return "seeded_fair";
    case SchedulerKind::scripted:
        return "scripted";
    }
    return "?";
}

inline SchedulerKind scheduler_kind(const std::string& s)
{
    if (s == "fsync")
        return SchedulerKind::fsync;
    if (s == "central_round_robin")
        return SchedulerKind::central_round_robin;
    if (s == "seeded_fair")
        return SchedulerKind::seeded_fair;
    if (s == "scripted")
        return SchedulerKind::scripted;
    throw ConfigError("unknown scheduler kind: " + s);
}

inline json to_json(const Scenario& sc)
{
    json j;
    j["name"] = sc.name;
    j["n"] = sc.n;
    json pos = json::array();
    for (const auto& p : sc.positions)
        pos.push_back({p.x, p.y});
    j["positions"] = pos;
    json assign = json::object();
    for (int i = 0; i < sc.n; ++i)
        assign[std::to_string(i)] = sc.assign[i];
    j["assign"] = assign;
    json frames;
    frames["mode"] = sc.frames.mode == FrameMode::fixed ? "fixed" : "per_activation";
    frames["seed"] = sc.frames.seed;
    if (!sc.frames.explicit_frames.empty()) {
        json list = json::array();
        for (const auto& f : sc.frames.explicit_frames)
            list.push_back({{"theta", f.theta}, {"scale", f.scale}});
        frames["explicit"] = list;
    }
    j["frames"] = frames;
    json sched;
    sched["kind"] = scheduler_name(sc.scheduler.kind);
    sched["seed"] = sc.scheduler.seed;
    sched["bound"] = sc.scheduler.bound;
    if (!sc.scheduler.script.empty())
        sched["script"] = sc.scheduler.script;
    if (sc.scheduler.adversarial)
        sched["adversarial"] = true;
    j["scheduler"] = sched;
    json crashes = json::object();
    for (const auto& [id, t] : sc.crashes)
        crashes[std::to_string(id)] = t;
    j["crashes"] = crashes;
    j["rounds"] = sc.rounds;
    j["snap"] = sc.snap;
    j["verdict"] = sc.verdict;
    j["tolerances"] = {{"eps_geo", sc.tolerances.eps_geo},
                       {"delta_conv", sc.tolerances.delta_conv},
                       {"window", sc.tolerances.window}};
    if (!sc.expected.empty())
        j["expected"] = sc.expected;
    return j;
}

inline int robot_key(const std::string& k, int n)
{
    std::size_t used = 0;
    int id = -1;
    try {
        id = std::stoi(k, &used);
    } catch (const std::exception&) {
        throw ConfigError("bad robot id: " + k);
    }
    if (used != k.size() || id < 0 || id >= n)
        throw ConfigError("bad robot id: " + k);
    return id;
}

// `assign` is either a list of specs or an object keyed by robot id, with "*" as default.
inline Scenario scenario_from_json(const json& j)
{
    try {
        Scenario sc;
        sc.name = j.value("name", "");
        sc.n = j.at("n").get<int>();
        if (sc.n <= 0)
            throw ConfigError("n must be positive");
        for (const auto& p : j.at("positions"))
            sc.positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        const json& a = j.at("assign");
        if (a.is_array()) {
            for (const auto& s : a)
                sc.assign.push_back(s.get<std::string>());
        } else if (a.is_string()) {
            sc.assign.assign(sc.n, a.get<std::string>());
        } else {
            sc.assign.assign(sc.n, a.value("*", ""));
            for (const auto& [k, v] : a.items())
                if (k != "*")
                    sc.assign[robot_key(k, sc.n)] = v.get<std::string>();
            for (const auto& s : sc.assign)
                if (s.empty())
                    throw ConfigError("robot without a target function");
        }
        if (j.contains("frames")) {
            const json& f = j["frames"];
            const std::string mode = f.value("mode", "fixed");
            if (mode == "fixed")
                sc.frames.mode = FrameMode::fixed;
            else if (mode == "per_activation")
                sc.frames.mode = FrameMode::per_activation;
            else
                throw ConfigError("unknown frame mode: " + mode);
            sc.frames.seed = f.value("seed", std::uint64_t{1});
            if (f.contains("explicit"))
                for (const auto& e : f["explicit"]) {
                    Frame fr{e.at("theta").get<double>(), e.at("scale").get<double>()};
                    if (!(fr.scale > 0))
                        throw ConfigError("frame scale must be positive");
                    sc.frames.explicit_frames.push_back(fr);
                }
        }
        if (j.contains("scheduler")) {
            const json& s = j["scheduler"];
            sc.scheduler.kind = scheduler_kind(s.value("kind", "fsync"));
            sc.scheduler.seed = s.value("seed", std::uint64_t{1});
            sc.scheduler.bound = s.value("bound", 0);
            if (s.contains("script"))
                sc.scheduler.script = s["script"].get<std::vector<std::vector<int>>>();
            sc.scheduler.adversarial = s.value("adversarial", false);
        }
        if (j.contains("crashes"))
            for (const auto& [k, v] : j["crashes"].items())
                sc.crashes[robot_key(k, sc.n)] = v.get<int>();
        sc.rounds = j.value("rounds", 100);
        sc.snap = j.value("snap", 1e-9);
        sc.verdict = j.value("verdict", "");
        if (j.contains("tolerances")) {
            const json& t = j["tolerances"];
            sc.tolerances.eps_geo = t.value("eps_geo", 1e-9);
            sc.tolerances.delta_conv = t.value("delta_conv", 1e-6);
            sc.tolerances.window = t.value("window", 50);
        }
        sc.expected = j.value("expected", "");
        return sc;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed scenario: ") + e.what());
    }
}

inline Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed scenario: ") + e.what());
    }
    return scenario_from_json(j);
}

inline void save_scenario(const Scenario& sc, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write " + path);
    out << to_json(sc).dump(2) << '\n';
}

// ---- traces (one JSON object per line) ----------------------------------

inline std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string json_ints(const std::vector<int>& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

inline std::string trace_line(const RoundRecord& r)
{
    std::string s = "{\"t\":" + std::to_string(r.t) + ",\"positions\":[";
    for (std::size_t i = 0; i < r.positions.size(); ++i)
        s += std::string(i ? "," : "") + "[" + fmt17(r.positions[i].x) + "," + fmt17(r.positions[i].y) + "]";
    s += "],\"activated\":" + json_ints(r.activated) + ",\"crashed\":" + json_ints(r.crashed);
    if (!r.psi_type.empty())
        s += ",\"psi_type\":\"" + r.psi_type + "\"";
    if (r.psi_also_s)
        s += ",\"psi_also_s\":true";
    if (!r.psi3_type.empty())
        s += ",\"psi3_type\":\"" + r.psi3_type + "\"";
    if (!r.ln_type.empty())
        s += ",\"ln_type\":\"" + r.ln_type + "\"";
    s += ",\"perimeter\":" + fmt17(r.metrics.perimeter) + ",\"diameter\":" + fmt17(r.metrics.diameter);
    if (r.metrics.lambda)
        s += ",\"lambda\":" + fmt17(*r.metrics.lambda);
    s += ",\"undefined_domain\":" + std::string(r.undefined_domain ? "true" : "false");
    s += ",\"containment_violation\":" + std::string(r.containment_violation ? "true" : "false") + "}";
    return s;
}

inline void write_trace(std::ostream& out, const Trace& tr)
{
    for (const auto& r : tr.rounds)
        out << trace_line(r) << '\n';
}

inline Trace read_trace(std::istream& in)
{
    Trace tr;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        try {
            const json j = json::parse(line);
            RoundRecord r;
            r.t = j.at("t").get<int>();
            for (const auto& p : j.at("positions"))
                r.positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
            r.activated = j.value("activated", std::vector<int>{});
            r.crashed = j.value("crashed", std::vector<int>{});
            r.psi_type = j.value("psi_type", "");
            r.psi_also_s = j.value("psi_also_s", false);
            r.psi3_type = j.value("psi3_type", "");
            r.ln_type = j.value("ln_type", "");
            r.metrics.perimeter = j.value("perimeter", 0.0);
            r.metrics.diameter = j.value("diameter", 0.0);
            if (j.contains("lambda"))
                r.metrics.lambda = j["lambda"].get<double>();
            r.undefined_domain = j.value("undefined_domain", false);
            r.containment_violation = j.value("containment_violation", false);
            if (tr.rounds.empty())
                tr.n = static_cast<int>(r.positions.size());
            else if (static_cast<int>(r.positions.size()) != tr.n)
                throw FormatError("robot count changes");
            tr.rounds.push_back(std::move(r));
        } catch (const json::exception& e) {
            throw FormatError("trace line " + std::to_string(lineno) + ": " + e.what());
        } catch (const FormatError& e) {
            throw FormatError("trace line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (tr.rounds.empty())
        throw FormatError("empty trace");
    tr.horizon = tr.rounds.back().t;
    tr.faulty.assign(tr.n, false);
    for (const auto& r : tr.rounds)
        for (int id : r.crashed)
            if (id >= 0 && id < tr.n)
                tr.faulty[id] = true;
    return tr;
}

} // namespace swarm
