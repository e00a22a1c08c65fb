#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "spacenet/connectivity/topology.hpp"
#include "spacenet/core/types.hpp"

namespace spacenet {

enum class RouteMetric : std::uint8_t { Delay, Hops };

struct GraphEdge {
    NodeId to = 0;
    double delay_s = 0.0;
    double weight = 0.0;
};

// Immutable adjacency of the links active at one instant. Neighbors are sorted by id.
class ConnectivityGraph {
public:
    ConnectivityGraph() = default;
    ConnectivityGraph(std::size_t node_count, SimTime time, const std::vector<std::tuple<NodeId, NodeId, double>>& links,
                      RouteMetric metric = RouteMetric::Delay);

    static ConnectivityGraph build(const TopologySnapshot& snapshot, std::size_t node_count,
                                   RouteMetric metric = RouteMetric::Delay);

    SimTime time() const { return time_; }
    std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return edges_.size() / 2; }
    std::span<const GraphEdge> neighbors(NodeId node) const;
    std::optional<double> delay(NodeId a, NodeId b) const;

private:
    SimTime time_ = 0.0;
    std::vector<std::uint32_t> offsets_;
    std::vector<GraphEdge> edges_;
};

inline constexpr double kMinEdgeWeight = 1e-9;

}  // namespace spacenet
