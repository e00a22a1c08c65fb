#include <gtest/gtest.h>

#include <map>
#include <algorithm>

#include "spacenet/core/errors.hpp"
#include "spacenet/ltp/ltp.hpp"
#include "spacenet/mobility/constants.hpp"

using namespace spacenet;
namespace k = spacenet::constants;

namespace {

std::shared_ptr<const TopologyModel> pair_topology(double distance_km, double bandwidth) {
    auto m = std::make_shared<MobilityModel>();
    OrbitalCenter o;
    o.name = "O";
    const auto c = m->add_center(o);
    const auto pts = m->add_constellation("p", c, FixedPoints{{{0, 0, 0}, {distance_km, 0, 0}}});
    LinkRule r;
    r.name = "wire";
    r.first = r.second = pts;
    r.candidates = FixedEdges{{{0, 1}}};
    r.bandwidth_bps = bandwidth;
    return std::make_shared<const TopologyModel>(m, std::vector<LinkRule>{r});
}

struct Outcomes final : Actor {
    std::map<Uid, int> delivered;
    std::map<Uid, int> dropped;
    std::map<Uid, DropReason> reasons;
    int canceled_receptions = 0;
    void handle(const Event& e, Simulation&) override {
        if (const auto* s = std::get_if<MessageSent>(&e.payload)) ++delivered[s->msg.uid];
        if (const auto* d = std::get_if<MessageDropped>(&e.payload)) {
            ++dropped[d->msg.uid];
            reasons[d->msg.uid] = d->reason;
        }
        if (std::holds_alternative<MessageReceptionCanceled>(e.payload)) ++canceled_receptions;
    }
};

// Counts transmissions of each checkpoint serial.
struct CheckpointCounter final : TransmissionObserver {
    std::map<Uid, int> sends;
    void on_transmission_start(const TransportItem& item, const TransmissionInfo&, Simulation&) override {
        if (const auto* s = item.segment(); s && s->is_checkpoint()) ++sends[s->checkpoint_serial];
    }
};

struct LtpHarness {
    std::shared_ptr<const TopologyModel> topo;
    Simulation sim{SimulationConfig{0.0, 0.0, 0}};
    TransportActor transport;
    LtpActor ltp;
    Outcomes out;
    CheckpointCounter cps;
    LinkId link{0, 1};

    LtpHarness(double loss, std::uint64_t seed, LtpConfig cfg = {}, double bandwidth = 10e6)
        : topo(pair_topology(30000.0, bandwidth)), transport(topo, LossConfig{seed, loss, {}}), ltp(cfg, transport) {
        transport.add_observer(cps);
        sim.add_actor(transport);
        sim.add_actor(ltp);
        sim.add_actor(out);
        sim.schedule(0.0, LinkUp{link, LinkParams{LinkKind::Isl, bandwidth}});
        sim.run(0.0);
    }

    Message message(Uid uid, std::uint64_t bits) {
        Message m;
        m.uid = uid;
        m.source = 0;
        m.destination = 1;
        m.size_bits = bits;
        return m;
    }
};

}  // namespace

TEST(LtpSegmentation, SegmentsCoverTheMessage) {
    LtpConfig cfg;
    cfg.max_segment_size_bits = 1000;
    for (const std::uint64_t green : {0ull, 999ull, 1000ull, 2500ull, 10'000ull}) {
        for (const std::uint64_t size : {1ull, 999ull, 1000ull, 1001ull, 7321ull}) {
            cfg.green_prefix_bits = green;
            Message m;
            m.size_bits = size;
            const auto segs = segment_message(m, cfg, 100, 7, 555, 0, 1);
            ASSERT_EQ(segs.size(), segment_count(m, cfg));
            std::uint64_t total = 0;
            std::uint64_t green_bits = 0;
            bool seen_red = false;
            for (std::size_t i = 0; i < segs.size(); ++i) {
                const auto& s = segs[i];
                EXPECT_EQ(s.uid, 100 + i);
                EXPECT_EQ(s.session, 7u);
                EXPECT_GT(s.bits, 0u);
                EXPECT_LE(s.bits, 1000u);
                total += s.bits;
                if (s.color == SegmentColor::Green) {
                    EXPECT_FALSE(seen_red);
                    green_bits += s.bits;
                } else {
                    seen_red = true;
                }
                EXPECT_EQ(s.is_checkpoint(), s.color == SegmentColor::Red && i + 1 == segs.size());
            }
            EXPECT_EQ(total, size);
            EXPECT_EQ(green_bits, std::min(green, size));
            const auto red_count = static_cast<std::size_t>(
                std::count_if(segs.begin(), segs.end(), [](auto& s) { return s.color == SegmentColor::Red; }));
            if (red_count > 0) {
                const auto& cp = segs.back();
                EXPECT_EQ(cp.checkpoint_serial, 555u);
                ASSERT_TRUE(cp.manifest);
                EXPECT_EQ(cp.manifest->size(), red_count);
                EXPECT_EQ(cp.manifest->front(), segs[segs.size() - red_count].uid);
            }
            const auto eogb = std::count_if(segs.begin(), segs.end(), [](auto& s) { return s.end_of_green_block; });
            EXPECT_EQ(eogb, green_bits > 0 ? 1 : 0);
        }
    }
}

TEST(LtpConfig, Validation) {
    LtpConfig c;
    EXPECT_NO_THROW(c.validate());
    c.max_segment_size_bits = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = {};
    c.max_retransmissions = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = {};
    c.checkpoint_timeout_s = -1.0;
    EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Ltp, LosslessOverheadIsOneReportAndOneAckPerCheckpoint) {
    LtpHarness h(0.0, 1);
    for (Uid i = 1; i <= 50; ++i) h.ltp.send(h.message(i, 3'500'000), 0, 1, h.link, h.sim);
    h.sim.run(1e6);
    const auto& c = h.ltp.counters();
    EXPECT_EQ(c.sessions_opened, 50u);
    EXPECT_EQ(c.sessions_completed, 50u);
    EXPECT_EQ(c.reports_sent, 50u);
    EXPECT_EQ(c.acks_sent, 50u);
    EXPECT_EQ(c.data_segments_sent, 200u);
    EXPECT_EQ(c.data_retransmissions, 0u);
    EXPECT_EQ(c.checkpoint_retransmissions, 0u);
    EXPECT_EQ(c.report_retransmissions, 0u);
    EXPECT_EQ(h.out.delivered.size(), 50u);
    EXPECT_EQ(h.ltp.active_sessions(), 0u);
}

class LtpReliability : public ::testing::TestWithParam<double> {};

TEST_P(LtpReliability, EveryRedMessageArrivesExactlyOnce) {
    const double loss = GetParam();
    LtpConfig cfg;
    cfg.max_segment_size_bits = 250'000;
    cfg.max_retransmissions = 1000;  // effectively unbounded
    LtpHarness h(loss, 2024, cfg);
    for (Uid i = 1; i <= 1000; ++i) h.ltp.send(h.message(i, 1'000'000), 0, 1, h.link, h.sim);
    h.sim.run(1e7);
    EXPECT_EQ(h.out.delivered.size(), 1000u);
    for (const auto& [uid, n] : h.out.delivered) EXPECT_EQ(n, 1) << "uid " << uid;
    EXPECT_TRUE(h.out.dropped.empty());
    EXPECT_EQ(h.ltp.active_sessions(), 0u);
    if (loss > 0.0) EXPECT_GT(h.ltp.counters().data_retransmissions, 0u);
}

INSTANTIATE_TEST_SUITE_P(Loss, LtpReliability, ::testing::Values(0.05, 0.2, 0.5));

TEST(Ltp, CheckpointIsSentAtMostMaxRetransmissionsPlusOneTimes) {
    LtpConfig cfg;
    cfg.max_retransmissions = 4;
    LtpHarness h(1.0, 3, cfg);
    h.ltp.send(h.message(1, 2'000'000), 0, 1, h.link, h.sim);
    h.sim.run(1e6);
    ASSERT_EQ(h.cps.sends.size(), 1u);
    EXPECT_EQ(h.cps.sends.begin()->second, 5);
    EXPECT_EQ(h.out.dropped[1], 1);
    EXPECT_EQ(h.out.reasons[1], DropReason::LtpCancel);
    EXPECT_TRUE(h.out.delivered.empty());
    EXPECT_EQ(h.ltp.counters().sessions_canceled, 1u);
    EXPECT_EQ(h.ltp.active_sessions(), 0u);
}

TEST(Ltp, CheckpointRetriesStayBoundedUnderHeavyLoss) {
    LtpConfig cfg;
    cfg.max_retransmissions = 3;
    LtpHarness h(0.6, 11, cfg);
    for (Uid i = 1; i <= 300; ++i) h.ltp.send(h.message(i, 3'000'000), 0, 1, h.link, h.sim);
    h.sim.run(1e7);
    for (const auto& [serial, n] : h.cps.sends) EXPECT_LE(n, 4) << "serial " << serial;
    // Every message ends exactly once: delivered, or canceled by the sender.
    for (Uid i = 1; i <= 300; ++i) {
        const int d = h.out.delivered.count(i) ? h.out.delivered[i] : 0;
        const int x = h.out.dropped.count(i) ? h.out.dropped[i] : 0;
        EXPECT_EQ(d + x, 1) << "uid " << i;
    }
}

TEST(Ltp, GreenMessagesArriveIffEveryGreenSegmentSurvives) {
    LtpConfig cfg;
    cfg.green_prefix_bits = 1'000'000'000;  // everything green
    cfg.max_segment_size_bits = 100'000;
    struct GreenLoss final : TransmissionObserver {
        std::map<Uid, bool> lost;  // session -> any green lost
        std::map<Uid, int> sent;   // session -> green transmissions
        std::map<Uid, Uid> message_of;
        void on_transmission_start(const TransportItem& item, const TransmissionInfo& info, Simulation&) override {
            const auto* s = item.segment();
            if (!s || s->type != SegmentType::Data) return;
            lost[s->session] = lost[s->session] || info.lost;
            ++sent[s->session];
            message_of[s->session] = s->message->uid;
        }
    } obs;
    LtpHarness h(0.1, 5, cfg);
    h.transport.add_observer(obs);
    for (Uid i = 1; i <= 300; ++i) h.ltp.send(h.message(i, 500'000), 0, 1, h.link, h.sim);
    h.sim.run(1e6);
    int delivered = 0;
    int lost = 0;
    for (const auto& [session, any_lost] : obs.lost) {
        const Uid uid = obs.message_of[session];
        EXPECT_EQ(obs.sent[session], 5) << "green data is never retransmitted";
        EXPECT_EQ(h.out.delivered.count(uid) == 1, !any_lost);
        EXPECT_EQ(h.out.dropped.count(uid) == 1, any_lost);
        any_lost ? ++lost : ++delivered;
    }
    EXPECT_GT(delivered, 0);
    EXPECT_GT(lost, 0);
    EXPECT_EQ(h.ltp.counters().reports_sent, 0u);
    EXPECT_EQ(h.ltp.active_sessions(), 0u);
}

TEST(Ltp, DefaultTimeoutFollowsTheRoundTrip) {
    // One 1 Mb segment at 10 Mbps over 30000 km; with everything lost the checkpoint is resent every
    // 2 * (0.1 + prop) + 1 s.
    LtpConfig cfg;
    cfg.max_retransmissions = 2;
    LtpHarness h(1.0, 9, cfg);
    struct Starts final : TransmissionObserver {
        std::vector<double> t;
        void on_transmission_start(const TransportItem&, const TransmissionInfo& i, Simulation&) override {
            t.push_back(i.start);
        }
    } starts;
    h.transport.add_observer(starts);
    h.ltp.send(h.message(1, 1'000'000), 0, 1, h.link, h.sim);
    h.sim.run(1e6);
    ASSERT_EQ(starts.t.size(), 3u);
    const double prop = 30000.0 / k::kSpeedOfLightKmS;
    const double rto = 2.0 * (0.1 + prop) + 1.0;
    EXPECT_NEAR(starts.t[1] - starts.t[0], rto, 1e-9);
    EXPECT_NEAR(starts.t[2] - starts.t[1], rto, 1e-9);
}

TEST(Ltp, ReportsCarryReceivedRedUids) {
    LtpConfig cfg;
    cfg.max_segment_size_bits = 100'000;
    LtpHarness h(0.3, 77, cfg);
    struct Reports final : TransmissionObserver {
        bool sorted = true;
        bool bits_ok = true;
        void on_transmission_start(const TransportItem& item, const TransmissionInfo&, Simulation&) override {
            const auto* s = item.segment();
            if (!s || s->type != SegmentType::Report) return;
            sorted &= std::is_sorted(s->received.begin(), s->received.end());
            bits_ok &= s->bits == 64 + 32 * s->received.size();
        }
    } reports;
    h.transport.add_observer(reports);
    for (Uid i = 1; i <= 100; ++i) h.ltp.send(h.message(i, 1'000'000), 0, 1, h.link, h.sim);
    h.sim.run(1e7);
    EXPECT_TRUE(reports.sorted);
    EXPECT_TRUE(reports.bits_ok);
    EXPECT_EQ(h.out.delivered.size(), 100u);
}
