#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spacenet/engine/events.hpp"

namespace spacenet {

class Simulation;

class Actor {
public:
    virtual ~Actor() = default;
    virtual void handle(const Event& event, Simulation& sim) = 0;
};

// Mobility/topology models that are recomputed at most once per minimum time delta.
class ModelRefresher {
public:
    virtual ~ModelRefresher() = default;
    virtual void refresh(SimTime t, Simulation& sim) = 0;
};

// Sees every event just before it is dispatched.
class EventObserver {
public:
    virtual ~EventObserver() = default;
    virtual void on_dispatch(const Event& event) = 0;
};

struct SimulationConfig {
    double min_time_delta = 0.01;
    SimTime end_time = 0.0;
    std::uint64_t rng_seed = 0;
};

struct RunSummary {
    std::uint64_t events_processed = 0;
    SimTime final_time = 0.0;
};

// Registered actors, refreshers and observers are not owned and must outlive the simulation.
class Simulation {
public:
    explicit Simulation(SimulationConfig config = {});

    const SimulationConfig& config() const { return config_; }

    void add_actor(Actor& actor);
    void add_refresher(ModelRefresher& refresher);
    void add_observer(EventObserver& observer);

    void initialize(SimTime start = 0.0);

    std::uint64_t schedule(SimTime time, EventPayload payload);
    std::optional<Event> step();
    RunSummary run(SimTime end_time);

    SimTime now() const { return now_; }
    std::size_t pending() const { return queue_.size(); }
    std::optional<SimTime> next_time() const;
    std::uint64_t refresh_count() const { return refresh_count_; }
    std::uint64_t events_processed() const { return processed_; }

    Uid next_uid() { return next_uid_++; }
    // First uid of a contiguous block of n.
    Uid allocate_uids(std::uint64_t n);

private:
    void maybe_refresh(SimTime t);

    SimulationConfig config_;
    std::vector<Event> queue_;
    std::vector<Actor*> actors_;
    std::vector<ModelRefresher*> refreshers_;
    std::vector<EventObserver*> observers_;
    SimTime now_ = 0.0;
    std::optional<SimTime> last_refresh_;
    std::uint64_t sequence_ = 0;
    std::uint64_t refresh_count_ = 0;
    std::uint64_t processed_ = 0;
    Uid next_uid_ = 1;
};

}  // namespace spacenet
