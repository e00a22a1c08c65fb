#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "spacenet/connectivity/topology.hpp"
#include "spacenet/engine/simulation.hpp"

namespace spacenet {

// Recomputes the topology at engine refresh ticks and announces link transitions.
class ConnectivityActor : public Actor, public ModelRefresher {
public:
    ConnectivityActor(std::shared_ptr<const TopologyModel> topology, double update_period_s = 10.0);

    void refresh(SimTime t, Simulation& sim) override;
    void handle(const Event& event, Simulation& sim) override;

    // Schedules the first periodic routing-table update.
    void start(Simulation& sim, SimTime t0 = 0.0);

    const TopologyModel& model() const { return *topology_; }
    std::shared_ptr<const TopologyModel> model_ptr() const { return topology_; }
    const TopologySnapshot& current() const { return current_; }
    std::uint64_t epoch() const { return epoch_; }
    std::uint64_t link_changes() const { return changes_; }

private:
    std::shared_ptr<const TopologyModel> topology_;
    double update_period_s_;
    TopologySnapshot current_;
    std::uint64_t epoch_ = 0;
    std::uint64_t changes_ = 0;
};

}  // namespace spacenet
