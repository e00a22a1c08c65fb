#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "spacenet/core/errors.hpp"
#include "spacenet/mobility/constants.hpp"
#include "spacenet/transport/transport.hpp"

using namespace spacenet;
namespace k = spacenet::constants;

namespace {

// Three fixed nodes 3000 km apart on a line, links 0-1 and 1-2 at 1 Mbps.
struct Line {
    std::shared_ptr<MobilityModel> mobility = std::make_shared<MobilityModel>();
    std::shared_ptr<const TopologyModel> topology;

    Line() {
        OrbitalCenter o;
        o.name = "O";
        const auto c = mobility->add_center(o);
        const auto pts = mobility->add_constellation("p", c, FixedPoints{{{0, 0, 0}, {3000, 0, 0}, {6000, 0, 0}}});
        LinkRule r;
        r.name = "wire";
        r.first = r.second = pts;
        r.candidates = FixedEdges{{{0, 1}, {1, 2}}};
        r.bandwidth_bps = 1e6;
        topology = std::make_shared<const TopologyModel>(mobility, std::vector<LinkRule>{r});
    }
};

struct Capture final : Actor {
    std::vector<Event> events;
    void handle(const Event& e, Simulation&) override {
        if (std::holds_alternative<MessageSent>(e.payload) || std::holds_alternative<MessageDropped>(e.payload) ||
            std::holds_alternative<LtpSegmentReceived>(e.payload)) {
            events.push_back(e);
        }
    }
};

Message msg(Uid uid, std::uint64_t bits) {
    Message m;
    m.uid = uid;
    m.source = 0;
    m.destination = 1;
    m.size_bits = bits;
    return m;
}

struct Harness {
    Line line;
    Simulation sim{SimulationConfig{0.0, 0.0, 0}};
    MemorySink log;
    TransportActor transport;
    Capture capture;

    explicit Harness(double loss = 0.0, std::uint64_t seed = 0)
        : transport(line.topology, LossConfig{seed, loss, {}}, &log) {
        sim.add_actor(transport);
        sim.add_actor(capture);
    }
    void up(LinkId l, SimTime t = 0.0) { sim.schedule(t, LinkUp{l, LinkParams{LinkKind::Isl, 1e6}}); }
    void down(LinkId l, SimTime t) { sim.schedule(t, LinkDown{l}); }
};

constexpr double kProp = 3000.0 / k::kSpeedOfLightKmS;

}  // namespace

TEST(Transport, SerializesThenPropagates) {
    Harness h;
    const LinkId l(0, 1);
    h.up(l);
    h.sim.run(0.0);
    h.transport.send(l, 0, TransportItem::of(msg(1, 500'000)), h.sim);
    h.transport.send(l, 0, TransportItem::of(msg(2, 250'000)), h.sim);
    h.sim.run(100.0);
    ASSERT_EQ(h.capture.events.size(), 2u);
    const auto& first = std::get<MessageSent>(h.capture.events[0].payload);
    EXPECT_EQ(first.msg.uid, 1u);
    EXPECT_EQ(first.msg.hop_count, 1u);
    EXPECT_EQ(first.to, 1u);
    EXPECT_NEAR(h.capture.events[0].time, 0.5 + kProp, 1e-12);
    EXPECT_NEAR(h.capture.events[1].time, 0.75 + kProp, 1e-12);
}

TEST(Transport, DirectionsAreIndependentChannels) {
    Harness h;
    const LinkId l(0, 1);
    h.up(l);
    h.sim.run(0.0);
    h.transport.send(l, 0, TransportItem::of(msg(1, 1'000'000)), h.sim);
    h.transport.send(l, 1, TransportItem::of(msg(2, 1'000'000)), h.sim);
    h.sim.run(100.0);
    ASSERT_EQ(h.capture.events.size(), 2u);
    EXPECT_NEAR(h.capture.events[0].time, 1.0 + kProp, 1e-12);
    EXPECT_NEAR(h.capture.events[1].time, 1.0 + kProp, 1e-12);
}

TEST(Transport, BuffersWhileDownAndAbortsOnLinkDown) {
    Harness h;
    const LinkId l(0, 1);
    h.transport.send(l, 0, TransportItem::of(msg(1, 1'000'000)), h.sim);
    EXPECT_EQ(h.transport.queued(l, 0), 1u);
    EXPECT_FALSE(h.transport.in_flight(l, 0));
    h.up(l, 10.0);
    h.down(l, 10.5);
    h.up(l, 20.0);
    h.sim.run(100.0);
    ASSERT_EQ(h.capture.events.size(), 1u);
    // Restarted from scratch at the second contact.
    EXPECT_NEAR(h.capture.events[0].time, 21.0 + kProp, 1e-12);
    const auto aborted = std::count_if(h.log.records().begin(), h.log.records().end(),
                                       [](const LogRecord& r) { return r.kind == RecordKind::TransmissionAborted; });
    EXPECT_EQ(aborted, 1);
}

TEST(Transport, PriorityClassesOvertakeFreshData) {
    Harness h;
    const LinkId l(0, 1);
    auto seg = [](Uid uid) {
        LtpSegment s;
        s.uid = uid;
        s.bits = 1000;
        return s;
    };
    h.transport.send(l, 0, TransportItem::of(seg(1)), h.sim);
    h.transport.send(l, 0, TransportItem::of(seg(2), Priority::Retransmission), h.sim);
    h.transport.send(l, 0, TransportItem::of(seg(3)), h.sim);
    h.transport.send(l, 0, TransportItem::of(seg(4), Priority::Control), h.sim);
    h.transport.send(l, 0, TransportItem::of(seg(5), Priority::Retransmission), h.sim);
    h.transport.send(l, 0, TransportItem::of(seg(6), Priority::Control), h.sim);
    h.up(l, 1.0);
    h.sim.run(100.0);
    std::vector<Uid> order;
    for (const auto& e : h.capture.events) order.push_back(std::get<LtpSegmentReceived>(e.payload).segment.uid);
    EXPECT_EQ(order, (std::vector<Uid>{4, 6, 2, 5, 1, 3}));
}

TEST(Transport, LostItemsOccupyTheLinkAndAreReported) {
    Harness h(1.0);
    const LinkId l(0, 1);
    h.up(l);
    h.sim.run(0.0);
    h.transport.send(l, 0, TransportItem::of(msg(1, 1'000'000)), h.sim);
    h.transport.send(l, 0, TransportItem::of(msg(2, 1'000'000)), h.sim);
    h.sim.run(100.0);
    ASSERT_EQ(h.capture.events.size(), 2u);
    const auto& d = std::get<MessageDropped>(h.capture.events[1].payload);
    EXPECT_EQ(d.reason, DropReason::Loss);
    EXPECT_EQ(d.node, 0u);
    EXPECT_DOUBLE_EQ(h.capture.events[0].time, 1.0);
    EXPECT_DOUBLE_EQ(h.capture.events[1].time, 2.0);
    EXPECT_EQ(h.transport.losses(), 2u);
}

TEST(Transport, RejectsUnknownLinksAndBadLoss) {
    Harness h;
    EXPECT_THROW(h.transport.send(LinkId(0, 2), 0, TransportItem::of(msg(1, 8)), h.sim), UnknownLink);
    EXPECT_THROW(h.transport.send(LinkId(0, 1), 2, TransportItem::of(msg(1, 8)), h.sim), UnknownLink);
    EXPECT_THROW(TransportItem::of(msg(1, 0)), ConfigError);
    Line line;
    EXPECT_THROW(TransportActor(line.topology, LossConfig{0, 1.5, {}}), ConfigError);
}

TEST(Transport, PerLinkLossOverridesDefault) {
    LossConfig c{0, 0.1, {{LinkId(0, 1), 0.0}}};
    EXPECT_EQ(c.probability(LinkId(0, 1)), 0.0);
    EXPECT_EQ(c.probability(LinkId(1, 2)), 0.1);
}

TEST(Transport, SameSeedSameLossOutcomes) {
    auto outcomes = [](std::uint64_t seed) {
        Harness h(0.3, seed);
        const LinkId l(0, 1);
        h.up(l);
        h.sim.run(0.0);
        for (Uid i = 1; i <= 200; ++i) h.transport.send(l, 0, TransportItem::of(msg(i, 1000)), h.sim);
        h.sim.run(1000.0);
        std::vector<bool> lost;
        for (const auto& e : h.capture.events) lost.push_back(std::holds_alternative<MessageDropped>(e.payload));
        return lost;
    };
    EXPECT_EQ(outcomes(5), outcomes(5));
    EXPECT_NE(outcomes(5), outcomes(6));
}

TEST(StoreAndForward, LossCompoundsPerHop) {
    for (const auto& [hops, p] : {std::pair<std::size_t, double>{1, 0.05}, {3, 0.05}, {5, 0.1}}) {
        const auto c = spacenet::testing::check_loss_compounding(hops, p, 10000, 99);
        EXPECT_EQ(c.created, 10000u);
        const double frac = static_cast<double>(c.delivered) / static_cast<double>(c.created);
        EXPECT_LE(std::abs(frac - c.expected), 3.0 * c.sigma) << hops << " hops, p=" << p;
        EXPECT_TRUE(c.replay_match);
    }
}

TEST(StoreAndForward, LosslessDeliversEverythingWithARoute) {
    MemorySink sink;
    ScenarioRunner runner(spacenet::testing::chain_scenario(4, 0.0, 500, DeliveryMode::StoreAndForward), sink, 1);
    const auto r = runner.run();
    EXPECT_EQ(r.stats.created, 500u);
    EXPECT_EQ(r.stats.delivered, 500u);
}

TEST(StoreAndForward, LatencyIsPropagationOnlyWithoutQueueingAtInfiniteBandwidth) {
    MemorySink sink;
    auto spec = spacenet::testing::chain_scenario(4, 0.0, 50, DeliveryMode::StoreAndForward);
    ScenarioRunner runner(spec, sink, 1);
    runner.transport().set_bandwidth_override(std::numeric_limits<double>::infinity());
    runner.run();
    const double path = 4.0 * 1000.0 / k::kSpeedOfLightKmS;
    int received = 0;
    for (const auto& r : sink.records()) {
        if (r.kind != RecordKind::MessageReceived) continue;
        ++received;
        EXPECT_NEAR(r.t - *r.created, path, 1e-9);
    }
    EXPECT_EQ(received, 50);
}

TEST(StoreAndForward, LatencyNeverBeatsPropagation) {
    MemorySink sink;
    ScenarioRunner runner(spacenet::testing::chain_scenario(3, 0.0, 2000, DeliveryMode::StoreAndForward), sink, 1);
    runner.transport().set_bandwidth_override(1e6);  // 8 ms per message, sent every 10 ms
    runner.run();
    const double path = 3.0 * 1000.0 / k::kSpeedOfLightKmS;
    for (const auto& r : sink.records()) {
        if (r.kind == RecordKind::MessageReceived) EXPECT_GE(r.t - *r.created, path + 3 * 0.008 - 1e-12);
    }
}

TEST(StoreAndForward, ChannelsNeverOverlapUnderLoad) {
    spacenet::testing::AuditSink audit(false);
    auto spec = spacenet::testing::chain_scenario(3, 0.02, 3000, DeliveryMode::StoreAndForward);
    ScenarioRunner runner(spec, audit, 2);
    runner.transport().set_bandwidth_override(0.5e6);  // 16 ms per message: queues build up
    const auto r = runner.run();
    EXPECT_TRUE(audit.violations().empty()) << audit.violations().front();
    EXPECT_EQ(audit.created(), audit.delivered() + audit.dropped() + audit.lost() + audit.residual());
    EXPECT_LE(r.stats.max_link_utilization_pct, 100.0);
    EXPECT_GT(r.stats.max_link_utilization_pct, 0.0);
}
