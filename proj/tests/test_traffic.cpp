#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "spacenet/core/errors.hpp"
#include "spacenet/traffic/traffic.hpp"

using namespace spacenet;

namespace {

struct Created final : Actor {
    std::vector<Event> events;
    void handle(const Event& e, Simulation&) override {
        if (std::holds_alternative<MessageCreated>(e.payload)) events.push_back(e);
    }
};

std::vector<Event> run_traffic(std::vector<PointToPointFlow> flows, std::vector<RandomTrafficSpec> random,
                               std::uint64_t seed, SimTime stop, double window = 300.0) {
    Simulation sim(SimulationConfig{0.0, 0.0, 0});
    TrafficActor traffic(std::move(flows), std::move(random), seed, window);
    Created created;
    sim.add_actor(traffic);
    sim.add_actor(created);
    traffic.set_stop_time(stop);
    traffic.start(sim);
    sim.run(stop + 1000.0);
    return created.events;
}

}  // namespace

TEST(FlowTimes, CountIsCeilingOfDurationOverInterval) {
    for (const double interval : {0.7, 1.0, 11.5, 300.0, 1000.0}) {
        for (const double horizon : {1.0, 100.0, 6000.0, 86400.0}) {
            PointToPointFlow f;
            f.source = 0;
            f.destination = 1;
            f.interval_s = interval;
            const auto times = flow_times(f, 0.0, horizon);
            EXPECT_EQ(times.size(), static_cast<std::size_t>(std::ceil(horizon / interval)))
                << interval << " over " << horizon;
        }
    }
}

TEST(FlowTimes, WindowsPartitionTheFlow) {
    PointToPointFlow f;
    f.source = 0;
    f.destination = 1;
    f.interval_s = 11.5;
    f.start_s = 3.0;
    f.end_s = 5000.0;
    const auto whole = flow_times(f, 0.0, 10000.0);
    std::vector<SimTime> pieces;
    for (double t = 0.0; t < 10000.0; t += 300.0) {
        const auto w = flow_times(f, t, t + 300.0);
        pieces.insert(pieces.end(), w.begin(), w.end());
    }
    EXPECT_EQ(whole, pieces);
    EXPECT_DOUBLE_EQ(whole.front(), 3.0);
    EXPECT_LT(whole.back(), 5000.0);
}

TEST(TrafficActor, CreatesCeilingCountPerFlow) {
    auto flows = profile_flows(TrafficProfile::Default, sequential_pairs({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13,
                                                                          14, 15, 16, 17, 18, 19},
                                                                         10));
    const auto events = run_traffic(flows, {}, 1, 6000.0);
    EXPECT_EQ(events.size(), 10u * 6000u);
    std::map<NodeId, std::size_t> per_source;
    std::set<Uid> uids;
    for (const auto& e : events) {
        const auto& m = std::get<MessageCreated>(e.payload).msg;
        ++per_source[m.source];
        EXPECT_EQ(m.size_bits, kBitsPerMegabyte);
        EXPECT_DOUBLE_EQ(m.created_at, e.time);
        EXPECT_LT(e.time, 6000.0);
        uids.insert(m.uid);
    }
    EXPECT_EQ(uids.size(), events.size());
    for (const auto& [src, n] : per_source) EXPECT_EQ(n, 6000u);

    const auto high = run_traffic(profile_flows(TrafficProfile::High, sequential_pairs({0, 1, 2, 3, 4, 5, 6, 7, 8, 9,
                                                                                         10, 11, 12, 13, 14, 15, 16,
                                                                                         17, 18, 19},
                                                                                        10)),
                                  {}, 1, 6000.0);
    EXPECT_EQ(high.size(), 10u * static_cast<std::size_t>(std::ceil(6000.0 / 11.5)));
}

TEST(TrafficProfiles, Parameters) {
    const auto pairs = sequential_pairs({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19}, 10);
    const auto d = profile_flows(TrafficProfile::Default, pairs);
    ASSERT_EQ(d.size(), 10u);
    EXPECT_EQ(d[0].size_bits, 8'000'000u);
    EXPECT_DOUBLE_EQ(d[0].interval_s, 1.0);
    const auto lo = profile_flows(TrafficProfile::Low, pairs);
    ASSERT_EQ(lo.size(), 1u);
    EXPECT_EQ(lo[0].size_bits, 80'000'000u);
    EXPECT_DOUBLE_EQ(lo[0].interval_s, 11.5);
    const auto hi = profile_flows(TrafficProfile::High, pairs);
    ASSERT_EQ(hi.size(), 10u);
    EXPECT_EQ(hi[9].size_bits, 80'000'000u);
    EXPECT_EQ(hi[9].source, 18u);
    EXPECT_EQ(hi[9].destination, 19u);
    EXPECT_TRUE(profile_flows(TrafficProfile::None, pairs).empty());
    EXPECT_THROW(profile_flows(TrafficProfile::Default, sequential_pairs({0, 1, 2, 3}, 2)), ConfigError);
    EXPECT_THROW(sequential_pairs({0, 1, 2}, 2), ConfigError);
    EXPECT_EQ(traffic_profile_from_string("high"), TrafficProfile::High);
    EXPECT_EQ(to_string(TrafficProfile::Low), "low");
    EXPECT_THROW(traffic_profile_from_string("bursty"), ConfigError);
}

TEST(RandomTraffic, SameSeedSameStream) {
    RandomTrafficSpec spec;
    spec.interarrival_s = Distribution::pareto(0.5, 1.5);
    spec.size_bits = Distribution::gaussian(1e6, 5e5);
    spec.endpoints = {3, 5, 7, 9};
    spec.source = Distribution::uniform(0.0, 4.0);
    spec.destination = Distribution::uniform(0.0, 4.0);
    auto stream = [&](std::uint64_t seed) {
        std::vector<std::tuple<double, NodeId, NodeId, std::uint64_t>> out;
        for (const auto& e : run_traffic({}, {spec}, seed, 2000.0)) {
            const auto& m = std::get<MessageCreated>(e.payload).msg;
            out.emplace_back(e.time, m.source, m.destination, m.size_bits);
        }
        return out;
    };
    const auto a = stream(42);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, stream(42));
    EXPECT_NE(a, stream(43));
    for (const auto& [t, s, d, bits] : a) {
        EXPECT_NE(s, d);
        EXPECT_TRUE(s == 3 || s == 5 || s == 7 || s == 9);
        EXPECT_GT(bits, 0u);
    }
}

TEST(RandomTraffic, WindowSizeDoesNotChangeTheStream) {
    RandomTrafficSpec spec;
    spec.interarrival_s = Distribution::uniform(0.1, 3.0);
    spec.endpoints = {0, 1, 2};
    spec.source = Distribution::uniform(0.0, 3.0);
    spec.destination = Distribution::uniform(0.0, 3.0);
    auto times = [&](double window) {
        std::vector<double> out;
        for (const auto& e : run_traffic({}, {spec}, 8, 3000.0, window)) out.push_back(e.time);
        return out;
    };
    EXPECT_EQ(times(300.0), times(17.0));
}

TEST(RandomTraffic, ParetoNeverBelowScale) {
    Rng rng(derive_seed(3, RngStream::Test));
    const auto d = Distribution::pareto(2.0, 1.2);
    double mn = 1e300;
    for (int i = 0; i < 100000; ++i) mn = std::min(mn, d.sample(rng));
    EXPECT_GE(mn, 2.0);
    EXPECT_LT(mn, 2.001);
}

TEST(RandomTraffic, GaussianRedrawsAreCounted) {
    Rng rng(derive_seed(4, RngStream::Test));
    const auto d = Distribution::gaussian(0.0, 1.0);
    std::uint64_t redraws = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) EXPECT_GT(d.sample_positive(rng, redraws), 0.0);
    // Half of the draws are non-positive, so redraws per sample follow a geometric law with mean 1.
    EXPECT_NEAR(static_cast<double>(redraws) / n, 1.0, 0.05);
    std::uint64_t none = 0;
    Distribution::constant(5.0).sample_positive(rng, none);
    EXPECT_EQ(none, 0u);
}

TEST(RandomTraffic, Validation) {
    EXPECT_THROW(Distribution::constant(0.0).validate(true), ConfigError);
    EXPECT_THROW(Distribution::uniform(2.0, 1.0).validate(false), ConfigError);
    EXPECT_THROW(Distribution::pareto(0.0, 1.0).validate(true), ConfigError);
    EXPECT_THROW(Distribution::gaussian(1.0, -1.0).validate(true), ConfigError);
    EXPECT_EQ(distribution_kind_from_string("normal"), Distribution::Kind::Gaussian);
    EXPECT_THROW(distribution_kind_from_string("zipf"), ConfigError);
    RandomTrafficSpec spec;
    spec.endpoints = {1};
    EXPECT_THROW(RandomTrafficGenerator(spec, 1), ConfigError);
    PointToPointFlow f;
    f.source = f.destination = 2;
    EXPECT_THROW(f.validate(), ConfigError);
}
