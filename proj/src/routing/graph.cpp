#include "spacenet/routing/graph.hpp"

#include <algorithm>

#include "spacenet/core/errors.hpp"

namespace spacenet {

ConnectivityGraph::ConnectivityGraph(std::size_t node_count, SimTime time,
                                     const std::vector<std::tuple<NodeId, NodeId, double>>& links,
                                     RouteMetric metric)
    : time_(time), offsets_(node_count + 1, 0) {
    for (const auto& [a, b, d] : links) {
        if (a >= node_count || b >= node_count) throw UnknownNode("graph edge references an unknown node");
        ++offsets_[a + 1];
        ++offsets_[b + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    edges_.resize(offsets_.back());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [a, b, d] : links) {
        const double w = metric == RouteMetric::Hops ? 1.0 : std::max(d, kMinEdgeWeight);
        edges_[fill[a]++] = {b, d, w};
        edges_[fill[b]++] = {a, d, w};
    }
    for (std::size_t n = 0; n < node_count; ++n) {
        std::sort(edges_.begin() + offsets_[n], edges_.begin() + offsets_[n + 1],
                  [](const GraphEdge& x, const GraphEdge& y) { return x.to < y.to; });
    }
}

ConnectivityGraph ConnectivityGraph::build(const TopologySnapshot& snapshot, std::size_t node_count,
                                           RouteMetric metric) {
    std::vector<std::tuple<NodeId, NodeId, double>> links;
    links.reserve(snapshot.links.size());
    for (const auto& l : snapshot.links) links.emplace_back(l.id.a(), l.id.b(), snapshot.delay_s(l.id));
    return ConnectivityGraph(node_count, snapshot.time, links, metric);
}

std::span<const GraphEdge> ConnectivityGraph::neighbors(NodeId node) const {
    if (node + 1 >= offsets_.size()) throw UnknownNode("node " + std::to_string(node) + " is not in the graph");
    return {edges_.data() + offsets_[node], edges_.data() + offsets_[node + 1]};
}

std::optional<double> ConnectivityGraph::delay(NodeId a, NodeId b) const {
    const auto adj = neighbors(a);
    const auto it = std::lower_bound(adj.begin(), adj.end(), b, [](const GraphEdge& e, NodeId v) { return e.to < v; });
    if (it == adj.end() || it->to != b) return std::nullopt;
    return it->delay_s;
}

}  // namespace spacenet
