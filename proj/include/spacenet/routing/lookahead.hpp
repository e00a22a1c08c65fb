#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spacenet/connectivity/topology.hpp"
#include "spacenet/routing/best_effort.hpp"
#include "spacenet/routing/graph.hpp"

namespace spacenet {

struct LookaheadConfig {
    double resolution_s = 60.0;
    std::uint32_t num_steps = 600;

    void validate() const;
};

using SampleLinks = std::vector<std::pair<LinkId, double>>;  // active links with one-way delay (s)

// Link states at future sample instants. Sample k is assumed to hold on [times[k], times[k+1]); the last
// sample holds indefinitely.
class GridWindow {
public:
    GridWindow() = default;
    GridWindow(std::size_t node_count, std::vector<SimTime> times, const std::vector<SampleLinks>& samples);

    std::size_t sample_count() const { return times_.size(); }
    const std::vector<SimTime>& times() const { return times_; }

    struct Edge {
        NodeId to;
        std::uint32_t index;
    };
    std::span<const Edge> neighbors(NodeId node) const;

    struct Hop {
        SimTime depart;
        SimTime arrive;
    };
    // Earliest arrival over an edge for a message ready at tau.
    std::optional<Hop> traverse(std::uint32_t edge, SimTime tau) const;

private:
    std::vector<SimTime> times_;
    std::vector<std::uint32_t> offsets_;
    std::vector<Edge> adjacency_;
    std::size_t samples_per_edge_ = 0;
    std::vector<double> delays_;       // edge-major, NaN when inactive
    std::vector<double> suffix_best_;  // edge-major, size samples+1
    std::vector<std::uint32_t> suffix_arg_;
};

struct LookaheadRoute {
    RouteDecision decision;
    SimTime arrival = 0.0;
};

// Earliest-arrival route from src to dst for a message ready at t. `current` holds on [t, first grid sample).
std::optional<LookaheadRoute> earliest_arrival_route(const ConnectivityGraph& current, const GridWindow& grid,
                                                     SimTime t, NodeId src, NodeId dst);

// Lookahead routing over sampled future topologies, with samples aligned to multiples of the resolution.
class LookaheadRouter {
public:
    LookaheadRouter(std::shared_ptr<const TopologyModel> topology, LookaheadConfig config);

    const LookaheadConfig& config() const { return config_; }
    void reset(std::shared_ptr<const ConnectivityGraph> current);
    std::optional<LookaheadRoute> route(NodeId src, NodeId dst, SimTime t);

    std::size_t samples_computed() const { return samples_computed_; }

private:
    const GridWindow& window(SimTime t);
    const SampleLinks& sample(std::int64_t grid_index);

    std::shared_ptr<const TopologyModel> topology_;
    LookaheadConfig config_;
    std::shared_ptr<const ConnectivityGraph> current_;
    std::map<std::int64_t, SampleLinks> samples_;
    std::optional<std::int64_t> window_index_;
    GridWindow window_;
    SimTime memo_time_ = -1.0;
    std::map<std::pair<NodeId, NodeId>, std::optional<LookaheadRoute>> memo_;
    std::size_t samples_computed_ = 0;
};

SampleLinks sample_links(const TopologySnapshot& snapshot);

}  // namespace spacenet
