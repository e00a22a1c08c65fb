#include "spacenet/routing/lookahead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "spacenet/core/errors.hpp"

namespace spacenet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void LookaheadConfig::validate() const {
    if (!(resolution_s > 0.0)) throw ConfigError("lookahead resolution must be positive");
    if (num_steps < 1) throw ConfigError("lookahead num_steps must be >= 1");
}

SampleLinks sample_links(const TopologySnapshot& snapshot) {
    SampleLinks out;
    out.reserve(snapshot.links.size());
    for (const auto& l : snapshot.links) out.emplace_back(l.id, snapshot.delay_s(l.id));
    return out;
}

GridWindow::GridWindow(std::size_t node_count, std::vector<SimTime> times, const std::vector<SampleLinks>& samples)
    : times_(std::move(times)), offsets_(node_count + 1, 0), samples_per_edge_(times_.size()) {
    if (samples.size() != times_.size()) throw ConfigError("grid window needs one link set per sample time");
    for (std::size_t k = 1; k < times_.size(); ++k) {
        if (!(times_[k] > times_[k - 1])) throw ConfigError("grid sample times must increase");
    }
    std::vector<LinkId> ids;
    for (const auto& s : samples) {
        for (const auto& [id, d] : s) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    const std::size_t n = samples_per_edge_;
    delays_.assign(ids.size() * n, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t k = 0; k < n; ++k) {
        for (const auto& [id, d] : samples[k]) {
            const auto e = static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
            delays_[e * n + k] = d;
        }
    }
    suffix_best_.assign(ids.size() * (n + 1), kInf);
    suffix_arg_.assign(ids.size() * (n + 1), 0);
    for (std::size_t e = 0; e < ids.size(); ++e) {
        for (std::size_t k = n; k-- > 0;) {
            const double d = delays_[e * n + k];
            const double here = std::isnan(d) ? kInf : times_[k] + d;
            const double later = suffix_best_[e * (n + 1) + k + 1];
            if (here <= later) {
                suffix_best_[e * (n + 1) + k] = here;
                suffix_arg_[e * (n + 1) + k] = static_cast<std::uint32_t>(k);
            } else {
                suffix_best_[e * (n + 1) + k] = later;
                suffix_arg_[e * (n + 1) + k] = suffix_arg_[e * (n + 1) + k + 1];
            }
        }
    }

    for (const auto id : ids) {
        if (id.b() >= node_count) throw UnknownNode("grid link references an unknown node");
        ++offsets_[id.a() + 1];
        ++offsets_[id.b() + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    adjacency_.resize(offsets_.back());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::uint32_t e = 0; e < ids.size(); ++e) {
        adjacency_[fill[ids[e].a()]++] = {ids[e].b(), e};
        adjacency_[fill[ids[e].b()]++] = {ids[e].a(), e};
    }
}

std::span<const GridWindow::Edge> GridWindow::neighbors(NodeId node) const {
    if (node + 1 >= offsets_.size()) return {};
    return {adjacency_.data() + offsets_[node], adjacency_.data() + offsets_[node + 1]};
}

std::optional<GridWindow::Hop> GridWindow::traverse(std::uint32_t edge, SimTime tau) const {
    const std::size_t n = samples_per_edge_;
    // k0: sample interval containing tau, or n when tau precedes every sample
    const auto it = std::upper_bound(times_.begin(), times_.end(), tau);
    std::optional<Hop> now;
    std::size_t next = 0;
    if (it != times_.begin()) {
        const auto k0 = static_cast<std::size_t>(it - times_.begin()) - 1;
        const double d = delays_[edge * n + k0];
        if (!std::isnan(d)) now = Hop{tau, tau + d};
        next = k0 + 1;
    }
    const double later = suffix_best_[edge * (n + 1) + next];
    if (now && now->arrive <= later) return now;
    if (later == kInf) return now;
    const auto k = suffix_arg_[edge * (n + 1) + next];
    return Hop{times_[k], later};
}

std::optional<LookaheadRoute> earliest_arrival_route(const ConnectivityGraph& current, const GridWindow& grid,
                                                     SimTime t, NodeId src, NodeId dst) {
    if (src == dst) return std::nullopt;
    const std::size_t n = current.node_count();
    const SimTime current_until = grid.sample_count() > 0 ? grid.times().front() : kInf;

    std::vector<double> arrival(n, kInf);
    std::vector<NodeId> first_hop(n, std::numeric_limits<NodeId>::max());
    std::vector<SimTime> depart(n, kInf);
    std::vector<char> done(n, 0);
    using Label = std::tuple<double, NodeId, NodeId>;  // arrival, first hop, node
    std::priority_queue<Label, std::vector<Label>, std::greater<>> heap;
    arrival[src] = t;
    heap.emplace(t, src, src);

    auto relax = [&](NodeId u, NodeId v, SimTime dep, SimTime arr) {
        const NodeId fh = u == src ? v : first_hop[u];
        const bool better = arr < arrival[v] || (arr == arrival[v] && fh < first_hop[v]) ||
                            (arr == arrival[v] && fh == first_hop[v] && u == src && dep < depart[v]);
        if (!better) return;
        arrival[v] = arr;
        first_hop[v] = fh;
        if (u == src) depart[v] = dep;
        heap.emplace(arr, fh, v);
    };

    while (!heap.empty()) {
        const auto [tau, fh, u] = heap.top();
        heap.pop();
        if (done[u] || tau != arrival[u] || fh != (u == src ? src : first_hop[u])) continue;
        done[u] = 1;
        if (u == dst) break;
        if (tau < current_until) {
            for (const auto& e : current.neighbors(u)) {
                if (!done[e.to]) relax(u, e.to, tau, tau + e.delay_s);
            }
        }
        for (const auto& e : grid.neighbors(u)) {
            if (done[e.to]) continue;
            if (const auto hop = grid.traverse(e.index, tau)) relax(u, e.to, hop->depart, hop->arrive);
        }
    }
    if (!done[dst]) return std::nullopt;
    const NodeId hop = first_hop[dst];
    return LookaheadRoute{RouteDecision{hop, depart[hop], LinkId(src, hop)}, arrival[dst]};
}

LookaheadRouter::LookaheadRouter(std::shared_ptr<const TopologyModel> topology, LookaheadConfig config)
    : topology_(std::move(topology)), config_(config) {
    config_.validate();
}

void LookaheadRouter::reset(std::shared_ptr<const ConnectivityGraph> current) {
    current_ = std::move(current);
    memo_.clear();
    memo_time_ = -1.0;
}

const SampleLinks& LookaheadRouter::sample(std::int64_t grid_index) {
    auto it = samples_.find(grid_index);
    if (it == samples_.end()) {
        const SimTime ts = static_cast<double>(grid_index) * config_.resolution_s;
        it = samples_.emplace(grid_index, sample_links(topology_->compute(ts))).first;
        ++samples_computed_;
    }
    return it->second;
}

const GridWindow& LookaheadRouter::window(SimTime t) {
    const auto w = static_cast<std::int64_t>(std::floor(t / config_.resolution_s));
    if (window_index_ == w) return window_;
    samples_.erase(samples_.begin(), samples_.lower_bound(w + 1));
    std::vector<SimTime> times;
    std::vector<SampleLinks> links;
    for (std::uint32_t k = 1; k < config_.num_steps; ++k) {
        times.push_back(static_cast<double>(w + k) * config_.resolution_s);
        links.push_back(sample(w + k));
    }
    window_ = GridWindow(topology_->node_count(), std::move(times), links);
    window_index_ = w;
    return window_;
}

std::optional<LookaheadRoute> LookaheadRouter::route(NodeId src, NodeId dst, SimTime t) {
    if (t != memo_time_) {
        memo_.clear();
        memo_time_ = t;
    }
    const auto key = std::make_pair(src, dst);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto result = earliest_arrival_route(*current_, window(t), t, src, dst);
    memo_.emplace(key, result);
    return result;
}

}  // namespace spacenet
