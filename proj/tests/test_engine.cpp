#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "spacenet/core/errors.hpp"
#include "spacenet/core/rng.hpp"
#include "spacenet/engine/simulation.hpp"

using namespace spacenet;

namespace {

struct Recorder final : Actor {
    std::vector<std::pair<SimTime, std::uint64_t>> seen;
    std::vector<std::uint64_t> keys;
    SimTime last = -1.0;
    bool went_back = false;

    void handle(const Event& e, Simulation&) override {
        if (e.time < last) went_back = true;
        last = e.time;
        seen.emplace_back(e.time, e.sequence);
        if (const auto* t = std::get_if<TimerExpired>(&e.payload)) keys.push_back(t->key);
    }
};

struct CountingRefresher final : ModelRefresher {
    std::vector<SimTime> times;
    void refresh(SimTime t, Simulation&) override { times.push_back(t); }
};

TimerExpired timer(std::uint64_t key) { return TimerExpired{TimerOwner::User, key, 0, 0}; }

}  // namespace

TEST(Simulation, DispatchesInTimeThenInsertionOrder) {
    Simulation sim;
    Recorder rec;
    sim.add_actor(rec);
    sim.schedule(2.0, timer(0));
    sim.schedule(1.0, timer(1));
    sim.schedule(2.0, timer(2));
    sim.schedule(1.0, timer(3));
    sim.run(10.0);
    EXPECT_EQ(rec.keys, (std::vector<std::uint64_t>{1, 3, 0, 2}));
}

TEST(Simulation, RandomBatchesDequeueSorted) {
    Rng rng(derive_seed(11, RngStream::Test));
    for (int trial = 0; trial < 200; ++trial) {
        Simulation sim;
        Recorder rec;
        sim.add_actor(rec);
        const int n = 1 + static_cast<int>(rng.below(300));
        for (int i = 0; i < n; ++i) sim.schedule(static_cast<double>(rng.below(20)) * 0.5, timer(i));
        sim.run(1e9);
        ASSERT_EQ(rec.seen.size(), static_cast<std::size_t>(n));
        EXPECT_TRUE(std::is_sorted(rec.seen.begin(), rec.seen.end()));
        EXPECT_FALSE(rec.went_back);
    }
}

TEST(Simulation, EventsScheduledDuringDispatchKeepOrder) {
    struct Chain final : Actor {
        std::vector<SimTime> times;
        void handle(const Event& e, Simulation& sim) override {
            times.push_back(e.time);
            const auto* t = std::get_if<TimerExpired>(&e.payload);
            if (t && t->key < 5) {
                sim.schedule(e.time, TimerExpired{TimerOwner::User, t->key + 1, 0, 0});
                sim.schedule(e.time + 1.0, TimerExpired{TimerOwner::User, 100, 0, 0});
            }
        }
    } chain;
    Simulation sim;
    sim.add_actor(chain);
    sim.schedule(0.0, timer(0));
    sim.run(100.0);
    EXPECT_TRUE(std::is_sorted(chain.times.begin(), chain.times.end()));
    EXPECT_EQ(chain.times.size(), 11u);
}

TEST(Simulation, RejectsSchedulingInThePast) {
    Simulation sim;
    Recorder rec;
    sim.add_actor(rec);
    sim.schedule(5.0, timer(0));
    sim.run(5.0);
    EXPECT_THROW(sim.schedule(4.0, timer(1)), SchedulingInPast);
    EXPECT_NO_THROW(sim.schedule(5.0, timer(2)));
}

TEST(Simulation, RunIsInclusiveOfEndTime) {
    Simulation sim;
    Recorder rec;
    sim.add_actor(rec);
    sim.schedule(1.0, timer(0));
    sim.schedule(2.0, timer(1));
    sim.schedule(2.000001, timer(2));
    const auto summary = sim.run(2.0);
    EXPECT_EQ(summary.events_processed, 2u);
    EXPECT_EQ(sim.pending(), 1u);
    EXPECT_DOUBLE_EQ(summary.final_time, 2.0);
}

TEST(Simulation, ObserversSeeEventsBeforeActors) {
    std::vector<std::string> order;
    struct Obs final : EventObserver {
        std::vector<std::string>* order;
        void on_dispatch(const Event&) override { order->push_back("observer"); }
    } obs;
    obs.order = &order;
    struct Act final : Actor {
        std::vector<std::string>* order;
        std::string name;
        void handle(const Event&, Simulation&) override { order->push_back(name); }
    } a, b;
    a.order = b.order = &order;
    a.name = "a";
    b.name = "b";
    Simulation sim;
    sim.add_actor(a);
    sim.add_actor(b);
    sim.add_observer(obs);
    sim.schedule(0.0, timer(0));
    sim.run(1.0);
    EXPECT_EQ(order, (std::vector<std::string>{"observer", "a", "b"}));
}

TEST(Simulation, RefreshAtMostOncePerMinDelta) {
    Rng rng(derive_seed(5, RngStream::Test));
    for (const double d : {0.01, 0.5, 3.0}) {
        Simulation sim(SimulationConfig{d, 0.0, 0});
        CountingRefresher refresher;
        Recorder rec;
        sim.add_actor(rec);
        sim.add_refresher(refresher);
        for (int i = 0; i < 2000; ++i) sim.schedule(rng.uniform(0.0, 50.0), timer(i));
        sim.run(100.0);
        ASSERT_FALSE(refresher.times.empty());
        EXPECT_DOUBLE_EQ(refresher.times.front(), rec.seen.front().first);
        for (std::size_t i = 1; i < refresher.times.size(); ++i) {
            EXPECT_GE(refresher.times[i] - refresher.times[i - 1], d);
        }
        // Any half-open window of length d holds at most one refresh.
        for (std::size_t i = 0; i + 1 < refresher.times.size(); ++i) {
            EXPECT_FALSE(refresher.times[i + 1] < refresher.times[i] + d);
        }
    }
}

TEST(Simulation, ZeroMinDeltaRefreshesOncePerDistinctTime) {
    Simulation sim(SimulationConfig{0.0, 0.0, 0});
    CountingRefresher refresher;
    Recorder rec;
    sim.add_actor(rec);
    sim.add_refresher(refresher);
    for (const double t : {0.0, 0.0, 1.0, 1.0, 1.5}) sim.schedule(t, timer(0));
    sim.run(10.0);
    EXPECT_EQ(refresher.times, (std::vector<SimTime>{0.0, 1.0, 1.5}));
}

TEST(Simulation, RefreshRunsBeforeDispatchOfTheTriggeringEvent) {
    struct Probe final : ModelRefresher, Actor {
        std::vector<std::string> log;
        void refresh(SimTime, Simulation&) override { log.push_back("refresh"); }
        void handle(const Event&, Simulation&) override { log.push_back("event"); }
    } probe;
    Simulation sim(SimulationConfig{10.0, 0.0, 0});
    sim.add_actor(probe);
    sim.add_refresher(probe);
    sim.schedule(0.0, timer(0));
    sim.schedule(1.0, timer(1));
    sim.schedule(10.0, timer(2));
    sim.run(20.0);
    EXPECT_EQ(probe.log, (std::vector<std::string>{"refresh", "event", "event", "refresh", "event"}));
}

TEST(Simulation, UidBlocksAreContiguous) {
    Simulation sim;
    const Uid a = sim.next_uid();
    const Uid b = sim.allocate_uids(10);
    const Uid c = sim.next_uid();
    EXPECT_EQ(b, a + 1);
    EXPECT_EQ(c, b + 10);
}

TEST(Simulation, RejectsNegativeMinDelta) { EXPECT_THROW(Simulation(SimulationConfig{-1.0, 0.0, 0}), ConfigError); }

TEST(Events, KindMatchesVariantIndex) {
    Event e;
    e.payload = LinkDown{LinkId(1, 2)};
    EXPECT_EQ(e.kind(), EventKind::LinkDown);
    EXPECT_EQ(to_string(e.kind()), "LinkDown");
    for (const auto r : {DropReason::Loss, DropReason::NoRoute, DropReason::NoRouteHorizon, DropReason::LtpCancel}) {
        EXPECT_EQ(drop_reason_from_string(to_string(r)), r);
    }
}
