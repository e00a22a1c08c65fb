#include "spacenet/traffic/traffic.hpp"

#include <algorithm>
#include <cmath>

#include "spacenet/core/errors.hpp"

namespace spacenet {

double Distribution::sample(Rng& rng) const {
    switch (kind) {
        case Kind::Constant: return a;
        case Kind::Uniform: return rng.uniform(a, b);
        case Kind::Gaussian: return rng.normal(a, b);
        case Kind::Pareto: return rng.pareto(a, b);
    }
    return a;
}

double Distribution::sample_positive(Rng& rng, std::uint64_t& redraws) const {
    for (int attempt = 0; attempt < 1'000'000; ++attempt) {
        const double v = sample(rng);
        if (v > 0.0) return v;
        ++redraws;
    }
    throw ConfigError("distribution produced no positive sample");
}

void Distribution::validate(bool positive) const {
    switch (kind) {
        case Kind::Constant:
            if (positive && !(a > 0.0)) throw ConfigError("constant distribution must be positive");
            break;
        case Kind::Uniform:
            if (!(b >= a)) throw ConfigError("uniform distribution needs low <= high");
            if (positive && !(b > 0.0)) throw ConfigError("uniform distribution must reach positive values");
            break;
        case Kind::Gaussian:
            if (!(b >= 0.0)) throw ConfigError("gaussian stddev must be non-negative");
            if (positive && b == 0.0 && !(a > 0.0)) throw ConfigError("gaussian distribution must be positive");
            break;
        case Kind::Pareto:
            if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("pareto scale and shape must be positive");
            break;
    }
}

Distribution::Kind distribution_kind_from_string(std::string_view name) {
    if (name == "constant") return Distribution::Kind::Constant;
    if (name == "uniform") return Distribution::Kind::Uniform;
    if (name == "gaussian" || name == "normal") return Distribution::Kind::Gaussian;
    if (name == "pareto") return Distribution::Kind::Pareto;
    throw ConfigError("unknown distribution '" + std::string(name) + "'");
}

void PointToPointFlow::validate() const {
    if (!(interval_s > 0.0)) throw ConfigError("flow interval must be positive");
    if (size_bits == 0) throw ConfigError("flow message size must be positive");
    if (!broadcast && source == destination) throw ConfigError("flow source and destination must differ");
    if (!(end_s >= start_s)) throw ConfigError("flow end precedes start");
}

std::vector<SimTime> flow_times(const PointToPointFlow& flow, SimTime t0, SimTime t1) {
    std::vector<SimTime> out;
    const SimTime lo = std::max(t0, flow.start_s);
    const SimTime hi = std::min(t1, flow.end_s);
    if (!(lo < hi)) return out;
    auto k = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil((lo - flow.start_s) / flow.interval_s)) - 1);
    for (;; ++k) {
        const SimTime t = flow.start_s + static_cast<double>(k) * flow.interval_s;
        if (t >= hi) break;
        if (t >= lo) out.push_back(t);
    }
    return out;
}

void RandomTrafficSpec::validate() const {
    interarrival_s.validate(true);
    size_bits.validate(true);
    source.validate(false);
    destination.validate(false);
    if (endpoints.size() < 2) throw ConfigError("random traffic needs at least two endpoints");
    if (!(end_s >= start_s)) throw ConfigError("random traffic end precedes start");
}

RandomTrafficGenerator::RandomTrafficGenerator(RandomTrafficSpec spec, std::uint64_t seed)
    : spec_(std::move(spec)), rng_(seed), next_(spec_.start_s) {
    spec_.validate();
}

NodeId RandomTrafficGenerator::endpoint(const Distribution& d) {
    const double x = std::floor(d.sample(rng_));
    const double hi = static_cast<double>(spec_.endpoints.size() - 1);
    return spec_.endpoints[static_cast<std::size_t>(std::clamp(x, 0.0, hi))];
}

std::vector<PlannedMessage> RandomTrafficGenerator::generate(SimTime t0, SimTime t1) {
    std::vector<PlannedMessage> out;
    const SimTime hi = std::min(t1, spec_.end_s);
    next_ = std::max(next_, t0);
    while (next_ < hi) {
        PlannedMessage m;
        m.time = next_;
        m.source = endpoint(spec_.source);
        int attempts = 0;
        do {
            if (++attempts > 10'000) throw ConfigError("random traffic cannot draw distinct endpoints");
            m.destination = endpoint(spec_.destination);
        } while (m.destination == m.source);
        m.size_bits = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(spec_.size_bits.sample_positive(rng_, redraws_))));
        out.push_back(m);
        next_ += spec_.interarrival_s.sample_positive(rng_, redraws_);
    }
    return out;
}

TrafficProfile traffic_profile_from_string(std::string_view name) {
    if (name == "default") return TrafficProfile::Default;
    if (name == "low") return TrafficProfile::Low;
    if (name == "high") return TrafficProfile::High;
    if (name == "none") return TrafficProfile::None;
    throw ConfigError("unknown traffic profile '" + std::string(name) + "'");
}

std::string_view to_string(TrafficProfile profile) {
    switch (profile) {
        case TrafficProfile::Default: return "default";
        case TrafficProfile::Low: return "low";
        case TrafficProfile::High: return "high";
        case TrafficProfile::None: return "none";
    }
    return "?";
}

std::vector<PointToPointFlow> profile_flows(TrafficProfile profile, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
    std::size_t count = 0;
    std::uint64_t bits = 0;
    double interval = 0.0;
    switch (profile) {
        case TrafficProfile::Default: count = 10, bits = kBitsPerMegabyte, interval = 1.0; break;
        case TrafficProfile::Low: count = 1, bits = 10 * kBitsPerMegabyte, interval = 11.5; break;
        case TrafficProfile::High: count = 10, bits = 10 * kBitsPerMegabyte, interval = 11.5; break;
        case TrafficProfile::None: return {};
    }
    if (pairs.size() < count) throw ConfigError("not enough node pairs for the traffic profile");
    std::vector<PointToPointFlow> flows;
    for (std::size_t i = 0; i < count; ++i) {
        PointToPointFlow f;
        f.source = pairs[i].first;
        f.destination = pairs[i].second;
        f.size_bits = bits;
        f.interval_s = interval;
        flows.push_back(f);
    }
    return flows;
}

std::vector<std::pair<NodeId, NodeId>> sequential_pairs(const std::vector<NodeId>& nodes, std::size_t k) {
    if (nodes.size() < 2 * k) throw ConfigError("not enough nodes to form traffic pairs");
    std::vector<std::pair<NodeId, NodeId>> out;
    for (std::size_t i = 0; i < k; ++i) out.emplace_back(nodes[2 * i], nodes[2 * i + 1]);
    return out;
}

TrafficActor::TrafficActor(std::vector<PointToPointFlow> flows, std::vector<RandomTrafficSpec> random,
                           std::uint64_t seed, double window_s, const ConnectivityActor* connectivity)
    : flows_(std::move(flows)), window_s_(window_s), connectivity_(connectivity) {
    if (!(window_s_ > 0.0)) throw ConfigError("traffic window must be positive");
    for (const auto& f : flows_) {
        f.validate();
        if (f.broadcast && !connectivity_) throw ConfigError("broadcast flows need connectivity");
    }
    for (std::size_t i = 0; i < random.size(); ++i) {
        generators_.emplace_back(std::move(random[i]), derive_seed(seed, RngStream::Traffic, i));
    }
}

std::uint64_t TrafficActor::redraws() const {
    std::uint64_t n = 0;
    for (const auto& g : generators_) n += g.redraws();
    return n;
}

void TrafficActor::start(Simulation& sim, SimTime t0) { sim.schedule(t0, TrafficTick{}); }

void TrafficActor::handle(const Event& event, Simulation& sim) {
    if (event.kind() == EventKind::TrafficTick) {
        const SimTime t1 = std::min(event.time + window_s_, stop_);
        if (event.time < t1) plan(event.time, t1, sim);
        if (event.time + window_s_ < stop_) sim.schedule(event.time + window_s_, TrafficTick{});
    } else if (const auto* timer = std::get_if<TimerExpired>(&event.payload)) {
        if (timer->owner == TimerOwner::User && timer->key < flows_.size()) expand_broadcast(timer->key, sim);
    }
}

void TrafficActor::plan(SimTime t0, SimTime t1, Simulation& sim) {
    for (std::size_t i = 0; i < flows_.size(); ++i) {
        const auto& f = flows_[i];
        for (const SimTime t : flow_times(f, t0, t1)) {
            if (f.broadcast) {
                sim.schedule(t, TimerExpired{TimerOwner::User, i, 0, 0});
            } else {
                create(f.source, f.destination, f.size_bits, f.label, false, t, sim);
            }
        }
    }
    for (auto& g : generators_) {
        for (const auto& m : g.generate(t0, t1)) create(m.source, m.destination, m.size_bits, g.spec().label, false, m.time, sim);
    }
    const std::uint64_t total = redraws();
    if (total != reported_redraws_) {
        sim.schedule(t0, ScenarioCustom{"traffic-redraws", static_cast<std::int64_t>(total - reported_redraws_)});
        reported_redraws_ = total;
    }
}

void TrafficActor::create(NodeId source, NodeId destination, std::uint64_t bits, const std::string& label,
                          bool broadcast, SimTime t, Simulation& sim) {
    Message msg;
    msg.uid = sim.next_uid();
    msg.source = source;
    msg.destination = destination;
    msg.size_bits = bits;
    msg.created_at = t;
    msg.label = label;
    msg.broadcast = broadcast;
    sim.schedule(t, MessageCreated{std::move(msg)});
    ++planned_;
}

void TrafficActor::expand_broadcast(std::size_t flow, Simulation& sim) {
    const auto& f = flows_[flow];
    for (const auto& link : connectivity_->current().links) {
        if (link.id.touches(f.source)) create(f.source, link.id.other(f.source), f.size_bits, f.label, true, sim.now(), sim);
    }
}

}  // namespace spacenet
