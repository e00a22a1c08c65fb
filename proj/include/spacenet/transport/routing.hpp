#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "spacenet/connectivity/connectivity_actor.hpp"
#include "spacenet/ltp/ltp.hpp"
#include "spacenet/routing/best_effort.hpp"
#include "spacenet/routing/lookahead.hpp"
#include "spacenet/transport/transport.hpp"

namespace spacenet {

enum class DeliveryMode : std::uint8_t { BestEffort, StoreAndForward, Ltp };

std::string_view to_string(DeliveryMode mode);
DeliveryMode delivery_mode_from_string(std::string_view name);

// Routing state derived from the connectivity actor, rebuilt lazily whenever its epoch moves.
class RoutingDataProvider {
public:
    RoutingDataProvider(const ConnectivityActor& connectivity, LookaheadConfig lookahead,
                        RouteMetric metric = RouteMetric::Delay);

    const ConnectivityGraph& graph();
    BestEffortRouter& best_effort();
    LookaheadRouter& lookahead();
    const TopologySnapshot& snapshot() const { return connectivity_.current(); }
    std::uint64_t rebuilds() const { return rebuilds_; }

private:
    void sync();

    const ConnectivityActor& connectivity_;
    RouteMetric metric_;
    std::uint64_t epoch_ = UINT64_MAX;
    std::shared_ptr<const ConnectivityGraph> graph_;
    BestEffortRouter best_effort_;
    LookaheadRouter lookahead_;
    std::uint64_t rebuilds_ = 0;
};

// Moves messages hop by hop: consults routing at every node and hands the message to the link layer.
class MessageRoutingActor final : public Actor, public MessageForwarder {
public:
    MessageRoutingActor(DeliveryMode mode, RoutingDataProvider& routes, TransportActor& transport,
                        LtpActor* ltp = nullptr);

    DeliveryMode mode() const { return mode_; }
    void handle(const Event& event, Simulation& sim) override;
    void forward(const Message& msg, NodeId at, Simulation& sim) override;

private:
    void dispatch(const Message& msg, NodeId at, NodeId next, LinkId link, Simulation& sim);
    void drop(const Message& msg, NodeId at, DropReason reason, Simulation& sim);
    void reroute_pending(LinkId link, Simulation& sim);

    DeliveryMode mode_;
    RoutingDataProvider& routes_;
    TransportActor& transport_;
    LtpActor* ltp_;
    std::unordered_map<Uid, std::vector<NodeId>> visited_;  // best-effort only
};

}  // namespace spacenet
