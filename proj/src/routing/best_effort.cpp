#include "spacenet/routing/best_effort.hpp"

#include <functional>
#include <limits>
#include <queue>

namespace spacenet {

std::vector<double> distances_to(const ConnectivityGraph& graph, NodeId dst) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(graph.node_count(), kInf);
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[dst] = 0.0;
    heap.emplace(0.0, dst);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (const auto& e : graph.neighbors(u)) {
            const double nd = dist[u] + e.weight;
            if (nd < dist[e.to]) {
                dist[e.to] = nd;
                heap.emplace(nd, e.to);
            }
        }
    }
    return dist;
}

std::optional<RouteDecision> best_effort_next_hop(const ConnectivityGraph& graph, const std::vector<double>& dist,
                                                  NodeId src, NodeId dst, SimTime t) {
    if (src == dst || !(dist[src] < std::numeric_limits<double>::infinity())) return std::nullopt;
    std::optional<NodeId> best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (const auto& e : graph.neighbors(src)) {
        const double cost = dist[e.to] + e.weight;
        if (cost < best_cost) {
            best_cost = cost;
            best = e.to;
        }
    }
    if (!best) return std::nullopt;
    return RouteDecision{*best, t, LinkId(src, *best)};
}

void BestEffortRouter::reset(std::shared_ptr<const ConnectivityGraph> graph) {
    graph_ = std::move(graph);
    tables_.clear();
}

const std::vector<double>& BestEffortRouter::table(NodeId dst) {
    auto it = tables_.find(dst);
    if (it == tables_.end()) it = tables_.emplace(dst, distances_to(*graph_, dst)).first;
    return it->second;
}

std::optional<RouteDecision> BestEffortRouter::next_hop(NodeId src, NodeId dst, SimTime t) {
    if (src == dst) return std::nullopt;
    return best_effort_next_hop(*graph_, table(dst), src, dst, t);
}

double BestEffortRouter::distance(NodeId src, NodeId dst) { return table(dst)[src]; }

}  // namespace spacenet
