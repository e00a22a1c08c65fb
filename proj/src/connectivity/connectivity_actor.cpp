#include "spacenet/connectivity/connectivity_actor.hpp"

#include "spacenet/core/errors.hpp"

namespace spacenet {

ConnectivityActor::ConnectivityActor(std::shared_ptr<const TopologyModel> topology, double update_period_s)
    : topology_(std::move(topology)), update_period_s_(update_period_s) {
    if (!(update_period_s_ > 0.0)) throw ConfigError("routing update period must be positive");
    current_.positions = std::make_shared<const std::vector<Vec3>>(topology_->node_count());
}

void ConnectivityActor::start(Simulation& sim, SimTime t0) { sim.schedule(t0, RoutingTableUpdate{epoch_}); }

void ConnectivityActor::refresh(SimTime t, Simulation& sim) {
    TopologySnapshot next = topology_->compute(t);
    for (const auto& change : diff_topology(current_, next)) {
        if (change.up) {
            const auto& rule = topology_->rules()[change.rule];
            sim.schedule(t, LinkUp{change.link, LinkParams{rule.kind, rule.bandwidth_bps}});
        } else {
            sim.schedule(t, LinkDown{change.link});
        }
        ++changes_;
    }
    current_ = std::move(next);
    ++epoch_;
}

void ConnectivityActor::handle(const Event& event, Simulation& sim) {
    if (event.kind() != EventKind::RoutingTableUpdate) return;
    sim.schedule(event.time + update_period_s_, RoutingTableUpdate{epoch_});
}

}  // namespace spacenet
