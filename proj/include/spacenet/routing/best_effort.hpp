#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "spacenet/routing/graph.hpp"

namespace spacenet {

struct RouteDecision {
    NodeId next_hop = 0;
    SimTime depart_time = 0.0;
    LinkId link;
};

// Shortest distances from every node to dst (the graph is symmetric). Unreachable nodes hold +inf.
std::vector<double> distances_to(const ConnectivityGraph& graph, NodeId dst);

// Next hop on a minimum-cost path; among equal-cost paths the lowest neighbor id wins.
std::optional<RouteDecision> best_effort_next_hop(const ConnectivityGraph& graph, const std::vector<double>& dist,
                                                  NodeId src, NodeId dst, SimTime t);

// Per-destination distance tables, memoized until the graph changes.
class BestEffortRouter {
public:
    void reset(std::shared_ptr<const ConnectivityGraph> graph);
    const ConnectivityGraph& graph() const { return *graph_; }

    std::optional<RouteDecision> next_hop(NodeId src, NodeId dst, SimTime t);
    double distance(NodeId src, NodeId dst);

private:
    const std::vector<double>& table(NodeId dst);

    std::shared_ptr<const ConnectivityGraph> graph_;
    std::unordered_map<NodeId, std::vector<double>> tables_;
};

}  // namespace spacenet
