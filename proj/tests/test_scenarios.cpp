#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spacenet/core/errors.hpp"
#include "spacenet/scenarios/scenario.hpp"

using namespace spacenet;

namespace {

ScenarioSpec shortened(const std::string& name, DeliveryMode mode, double duration = 900.0) {
    auto spec = build_scenario(name);
    spec.mode = mode;
    spec.duration_s = duration;
    spec.drain_s = 0.0;
    return spec;
}

// Traffic as configured: everything about a created message except its uid.
std::vector<std::tuple<double, std::uint64_t, std::uint64_t, std::uint64_t, std::string>> traffic_of(
    const std::vector<LogRecord>& log) {
    std::vector<std::tuple<double, std::uint64_t, std::uint64_t, std::uint64_t, std::string>> out;
    for (const auto& r : log) {
        if (r.kind == RecordKind::MessageCreated) out.emplace_back(r.t, *r.node, *r.to, *r.size, r.label);
    }
    return out;
}

}  // namespace

TEST(Scenarios, EveryScenarioBuildsAndValidates) {
    for (const auto& name : scenario_names()) {
        const auto spec = build_scenario(name);
        EXPECT_NO_THROW(spec.validate()) << name;
        EXPECT_FALSE(spec.flows.empty() && spec.random_traffic.empty()) << name;
        EXPECT_FALSE(spec.rules.empty()) << name;
        EXPECT_GT(spec.mobility->node_count(), 1u) << name;
        for (const auto& rule : spec.ground_space_rules) {
            EXPECT_TRUE(std::any_of(spec.rules.begin(), spec.rules.end(), [&](auto& r) { return r.name == rule; }));
        }
    }
    EXPECT_THROW(build_scenario("venus"), ConfigError);
}

TEST(Scenarios, ConstellationSizes) {
    EXPECT_EQ(build_walker().nodes_of("walker").size(), 66u);
    EXPECT_EQ(build_walker(512, 16).nodes_of("walker").size(), 512u);
    EXPECT_THROW(build_walker(65, 6), InvalidWalkerParams);
    const auto cube = build_cubesat(default_tle_path());
    EXPECT_GE(cube.nodes_of("cubesats").size(), 10u);
    const auto lm = build_lunar_mars();
    EXPECT_EQ(lm.nodes_of("earth-walker").size(), 66u);
    EXPECT_EQ(lm.nodes_of("mars-walker").size(), 66u);
    EXPECT_EQ(lm.nodes_of("lunar-walker").size(), 8u);
}

TEST(Scenarios, ProfileOverridesFlowCount) {
    ScenarioOptions o;
    o.traffic = TrafficProfile::High;
    for (const auto& name : scenario_names()) {
        const auto spec = build_scenario(name, o);
        ASSERT_EQ(spec.flows.size(), 10u) << name;
        EXPECT_EQ(spec.flows[0].size_bits, 10 * kBitsPerMegabyte);
    }
    o.traffic = TrafficProfile::Low;
    EXPECT_EQ(build_scenario("walker", o).flows.size(), 1u);
}

TEST(Scenarios, RunsAreDeterministic) {
    for (const auto mode : {DeliveryMode::BestEffort, DeliveryMode::StoreAndForward, DeliveryMode::Ltp}) {
        auto digest = [&](std::uint64_t seed) {
            HashingSink sink;
            ScenarioRunner runner(shortened("walker", mode), sink, seed);
            runner.run();
            return std::make_pair(sink.digest(), sink.lines());
        };
        const auto a = digest(11);
        EXPECT_EQ(a, digest(11));
        EXPECT_NE(a.first, digest(12).first);
    }
}

TEST(Scenarios, ModeSwapChangesOnlyDelivery) {
    for (const std::string name : {"walker", "cubesat", "lunar-mars"}) {
        const auto base = build_scenario(name);
        std::vector<std::vector<std::tuple<double, std::uint64_t, std::uint64_t, std::uint64_t, std::string>>> traffic;
        for (const auto mode : {DeliveryMode::BestEffort, DeliveryMode::StoreAndForward, DeliveryMode::Ltp}) {
            auto spec = build_scenario(name);
            spec.mode = mode;
            EXPECT_EQ(spec.flows.size(), base.flows.size());
            EXPECT_EQ(spec.rules.size(), base.rules.size());
            EXPECT_EQ(spec.mobility->node_count(), base.mobility->node_count());
            EXPECT_EQ(spec.loss.default_loss_probability, base.loss.default_loss_probability);
            EXPECT_EQ(spec.duration_s, base.duration_s);
            EXPECT_EQ(spec.drain_s, base.drain_s);
            const double t = 1234.5;
            EXPECT_EQ(spec.mobility->positions(t), base.mobility->positions(t));
            spec.duration_s = 1800.0;
            spec.drain_s = 0.0;
            MemorySink sink;
            ScenarioRunner runner(spec, sink, 5);
            runner.run();
            traffic.push_back(traffic_of(sink.records()));
        }
        ASSERT_FALSE(traffic[0].empty());
        EXPECT_EQ(traffic[1], traffic[0]) << name;
        EXPECT_EQ(traffic[2], traffic[0]) << name;
    }
}

TEST(Scenarios, AuditHoldsOnShortRuns) {
    for (const auto& name : scenario_names()) {
        for (const auto mode : {DeliveryMode::BestEffort, DeliveryMode::StoreAndForward, DeliveryMode::Ltp}) {
            spacenet::testing::AuditSink audit(mode == DeliveryMode::BestEffort);
            ScenarioRunner runner(shortened(name, mode, 600.0), audit, 1);
            const auto r = runner.run();
            EXPECT_TRUE(audit.violations().empty()) << name << ": " << audit.violations().front();
            EXPECT_EQ(audit.created(), r.stats.created);
            EXPECT_EQ(audit.delivered(), r.stats.delivered);
            EXPECT_EQ(audit.residual(), r.stats.residual);
            EXPECT_LE(r.stats.max_link_utilization_pct, 100.0);
        }
    }
}

TEST(Scenarios, ValidationRejectsBadSpecs) {
    auto spec = build_walker();
    spec.duration_s = 0.0;
    EXPECT_THROW(spec.validate(), ConfigError);
    spec = build_walker();
    spec.flows[0].destination = 100000;
    EXPECT_THROW(spec.validate(), UnknownNode);
    spec = build_walker();
    spec.loss.default_loss_probability = -0.1;
    EXPECT_THROW(spec.validate(), ConfigError);
    EXPECT_THROW(spec.nodes_of("nope"), ConfigError);
}
