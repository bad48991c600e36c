#include <catch_amalgamated.hpp>

#include "support.hpp"

#include <swarm/io.hpp>

#include <cstdio>
#include <filesystem>
#include <sstream>

using namespace swarm;

namespace {

std::string trace_text(const Trace& tr)
{
    std::ostringstream out;
    write_trace(out, tr);
    return out.str();
}

json minimal() { return json::parse(R"({"n": 2, "positions": [[0, 0], [1, 0]], "assign": "cog"})"); }

} // namespace

TEST_CASE("scenario json round trip")
{
    for (const auto& name : corpus_names()) {
        const Scenario sc = build(name, 4);
        const Scenario back = scenario_from_json(json::parse(to_json(sc).dump()));
        CHECK(back.n == sc.n);
        CHECK(back.positions == sc.positions);
        CHECK(back.assign == sc.assign);
        CHECK(back.crashes == sc.crashes);
        CHECK(back.rounds == sc.rounds);
        CHECK(back.snap == sc.snap);
        CHECK(back.verdict == sc.verdict);
        CHECK(back.expected == sc.expected);
        CHECK(back.frames.seed == sc.frames.seed);
        CHECK(back.scheduler.kind == sc.scheduler.kind);
        CHECK(back.scheduler.seed == sc.scheduler.seed);
        CHECK(back.scheduler.bound == sc.scheduler.bound);
        CHECK(back.tolerances.eps_geo == sc.tolerances.eps_geo);
        CHECK(trace_text(run(back)) == trace_text(run(sc)));
    }
}

TEST_CASE("assignment forms")
{
    json j = minimal();
    CHECK(scenario_from_json(j).assign == std::vector<std::string>{"cog", "cog"});
    j["assign"] = {"cog", "gat"};
    CHECK(scenario_from_json(j).assign == std::vector<std::string>{"cog", "gat"});
    j["assign"] = {{"*", "cog"}, {"1", "gat"}};
    CHECK(scenario_from_json(j).assign == std::vector<std::string>{"cog", "gat"});
    j["assign"] = {{"1", "gat"}};
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
    j["assign"] = {{"*", "cog"}, {"2", "gat"}};
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
    j["assign"] = {{"*", "cog"}, {"x", "gat"}};
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
}

TEST_CASE("scenario json errors")
{
    json j = minimal();
    j.erase("n");
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
    j = minimal();
    j["frames"] = {{"mode", "wobbly"}};
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
    j = minimal();
    j["frames"] = {{"explicit", {{{"theta", 0}, {"scale", 0}}, {{"theta", 0}, {"scale", 1}}}}};
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
    j = minimal();
    j["scheduler"] = {{"kind", "chaotic"}};
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
    j = minimal();
    j["positions"] = {{0, 0}, {"a", 1}};
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ConfigError);

    const auto path = std::filesystem::temp_directory_path() / "swarm_bad_scenario.json";
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_AS(load_scenario(path.string()), ConfigError);
    std::filesystem::remove(path);
}

TEST_CASE("scenario files save and load")
{
    const auto path = std::filesystem::temp_directory_path() / "swarm_scenario_io.json";
    const Scenario sc = build("tau_quad_frozen");
    save_scenario(sc, path.string());
    const Scenario back = load_scenario(path.string());
    CHECK(back.positions == sc.positions);
    CHECK(back.assign == sc.assign);
    std::filesystem::remove(path);
}

TEST_CASE("numbers print with 17 significant digits and read back exactly")
{
    for (double v : {0.1, 1.0 / 3, std::sqrt(2.0), -1e-300, 123456789.123456789})
        CHECK(std::stod(fmt17(v)) == v);
}

TEST_CASE("traces round trip and are byte identical for the same seed")
{
    const Scenario sc = campaign_scenario(CampaignSpec{}, 21);
    const Trace tr = run(sc);
    const std::string text = trace_text(tr);
    CHECK(text == trace_text(run(sc)));

    std::istringstream in(text);
    const Trace back = read_trace(in);
    CHECK(back.n == tr.n);
    CHECK(back.rounds.size() == tr.rounds.size());
    for (std::size_t k = 0; k < tr.rounds.size(); ++k) {
        CHECK(back.rounds[k].positions == tr.rounds[k].positions);
        CHECK(back.rounds[k].psi_type == tr.rounds[k].psi_type);
    }
    CHECK(trace_text(back) == text);
    for (const auto& [id, t] : sc.crashes)
        CHECK(back.faulty[id] == (t <= back.horizon));
}

TEST_CASE("malformed traces are rejected")
{
    std::istringstream empty("");
    CHECK_THROWS_AS(read_trace(empty), FormatError);
    std::istringstream junk("{\"t\":0,\"positions\":[[0,0]]}\nnot json\n");
    CHECK_THROWS_AS(read_trace(junk), FormatError);
    std::istringstream changing("{\"t\":0,\"positions\":[[0,0]]}\n{\"t\":1,\"positions\":[[0,0],[1,1]]}\n");
    CHECK_THROWS_AS(read_trace(changing), FormatError);
}

TEST_CASE("scheduler names round trip")
{
    for (auto k : {SchedulerKind::fsync, SchedulerKind::central_round_robin, SchedulerKind::seeded_fair,
                   SchedulerKind::scripted})
        CHECK(scheduler_kind(scheduler_name(k)) == k);
    CHECK_THROWS_AS(scheduler_kind("lazy"), ConfigError);
}
