#include "spacenet/transport/routing.hpp"

#include <algorithm>
#include <string>

#include "spacenet/core/errors.hpp"

namespace spacenet {

std::string_view to_string(DeliveryMode mode) {
    switch (mode) {
        case DeliveryMode::BestEffort: return "best-effort";
        case DeliveryMode::StoreAndForward: return "saf";
        case DeliveryMode::Ltp: return "ltp";
    }
    return "?";
}

DeliveryMode delivery_mode_from_string(std::string_view name) {
    if (name == "best-effort" || name == "be") return DeliveryMode::BestEffort;
    if (name == "saf" || name == "store-and-forward") return DeliveryMode::StoreAndForward;
    if (name == "ltp") return DeliveryMode::Ltp;
    throw ConfigError("unknown delivery mode '" + std::string(name) + "'");
}

RoutingDataProvider::RoutingDataProvider(const ConnectivityActor& connectivity, LookaheadConfig lookahead,
                                         RouteMetric metric)
    : connectivity_(connectivity), metric_(metric), lookahead_(connectivity.model_ptr(), lookahead) {}

void RoutingDataProvider::sync() {
    if (connectivity_.epoch() == epoch_) return;
    epoch_ = connectivity_.epoch();
    graph_ = std::make_shared<const ConnectivityGraph>(
        ConnectivityGraph::build(connectivity_.current(), connectivity_.model().node_count(), metric_));
    best_effort_.reset(graph_);
    lookahead_.reset(graph_);
    ++rebuilds_;
}

const ConnectivityGraph& RoutingDataProvider::graph() {
    sync();
    return *graph_;
}

BestEffortRouter& RoutingDataProvider::best_effort() {
    sync();
    return best_effort_;
}

LookaheadRouter& RoutingDataProvider::lookahead() {
    sync();
    return lookahead_;
}

MessageRoutingActor::MessageRoutingActor(DeliveryMode mode, RoutingDataProvider& routes, TransportActor& transport,
                                         LtpActor* ltp)
    : mode_(mode), routes_(routes), transport_(transport), ltp_(ltp) {
    if (mode_ == DeliveryMode::Ltp) {
        if (!ltp_) throw ConfigError("LTP delivery requires an LTP actor");
        ltp_->set_forwarder(*this);
    }
}

void MessageRoutingActor::handle(const Event& event, Simulation& sim) {
    if (const auto* created = std::get_if<MessageCreated>(&event.payload)) {
        forward(created->msg, created->msg.source, sim);
    } else if (const auto* sent = std::get_if<MessageSent>(&event.payload)) {
        forward(sent->msg, sent->to, sim);
    } else if (const auto* down = std::get_if<LinkDown>(&event.payload)) {
        if (mode_ != DeliveryMode::Ltp) reroute_pending(down->link, sim);
    } else if (const auto* received = std::get_if<MessageReceived>(&event.payload)) {
        visited_.erase(received->msg.uid);
    } else if (const auto* dropped = std::get_if<MessageDropped>(&event.payload)) {
        visited_.erase(dropped->msg.uid);
    }
}

void MessageRoutingActor::forward(const Message& msg, NodeId at, Simulation& sim) {
    const SimTime t = sim.now();
    if (at == msg.destination) {
        sim.schedule(t, MessageReceived{msg, at});
        return;
    }
    if (msg.broadcast) {
        const LinkId link(at, msg.destination);
        if (at == msg.source && routes_.snapshot().contains(link)) {
            dispatch(msg, at, msg.destination, link, sim);
        } else {
            drop(msg, at, DropReason::NoRoute, sim);
        }
        return;
    }
    if (mode_ == DeliveryMode::BestEffort) {
        const auto decision = routes_.best_effort().next_hop(at, msg.destination, t);
        if (!decision) {
            drop(msg, at, DropReason::NoRoute, sim);
            return;
        }
        auto& path = visited_[msg.uid];
        if (path.empty()) path.push_back(msg.source);
        if (std::find(path.begin(), path.end(), decision->next_hop) != path.end()) {
            drop(msg, at, DropReason::NoRoute, sim);
            return;
        }
        path.push_back(decision->next_hop);
        dispatch(msg, at, decision->next_hop, decision->link, sim);
        return;
    }
    const auto route = routes_.lookahead().route(at, msg.destination, t);
    if (!route) {
        drop(msg, at, DropReason::NoRouteHorizon, sim);
        return;
    }
    dispatch(msg, at, route->decision.next_hop, route->decision.link, sim);
}

void MessageRoutingActor::dispatch(const Message& msg, NodeId at, NodeId next, LinkId link, Simulation& sim) {
    if (mode_ == DeliveryMode::Ltp) {
        ltp_->send(msg, at, next, link, sim);
    } else {
        transport_.send(link, at, TransportItem::of(msg), sim);
    }
}

void MessageRoutingActor::drop(const Message& msg, NodeId at, DropReason reason, Simulation& sim) {
    sim.schedule(sim.now(), MessageDropped{msg, at, reason});
}

void MessageRoutingActor::reroute_pending(LinkId link, Simulation& sim) {
    for (const NodeId from : {link.a(), link.b()}) {
        for (auto& item : transport_.take_pending(link, from)) {
            if (const auto* msg = item.message()) {
                if (mode_ == DeliveryMode::BestEffort) {
                    auto it = visited_.find(msg->uid);
                    if (it != visited_.end() && !it->second.empty()) it->second.pop_back();
                }
                forward(*msg, from, sim);
            }
        }
    }
}

}  // namespace spacenet
