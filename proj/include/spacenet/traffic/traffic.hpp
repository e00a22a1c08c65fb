#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "spacenet/connectivity/connectivity_actor.hpp"
#include "spacenet/core/message.hpp"
#include "spacenet/core/rng.hpp"
#include "spacenet/engine/simulation.hpp"

namespace spacenet {

struct Distribution {
    enum class Kind : std::uint8_t { Constant, Uniform, Gaussian, Pareto };

    Kind kind = Kind::Constant;
    double a = 0.0;  // value | low | mean | scale
    double b = 0.0;  // - | high | stddev | shape

    static Distribution constant(double v) { return {Kind::Constant, v, 0.0}; }
    static Distribution uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
    static Distribution gaussian(double mean, double stddev) { return {Kind::Gaussian, mean, stddev}; }
    static Distribution pareto(double scale, double shape) { return {Kind::Pareto, scale, shape}; }

    double sample(Rng& rng) const;
    // Positive sample; Gaussian draws at or below zero are redrawn and counted.
    double sample_positive(Rng& rng, std::uint64_t& redraws) const;
    void validate(bool positive) const;
};

Distribution::Kind distribution_kind_from_string(std::string_view name);

struct PointToPointFlow {
    NodeId source = 0;
    NodeId destination = 0;
    std::uint64_t size_bits = kBitsPerMegabyte;
    double interval_s = 1.0;
    SimTime start_s = 0.0;
    SimTime end_s = std::numeric_limits<double>::infinity();
    std::string label = "p2p";
    bool broadcast = false;  // one copy per active neighbor of source; destination unused

    void validate() const;
};

// Creation times of a flow within [t0, t1): start + k * interval.
std::vector<SimTime> flow_times(const PointToPointFlow& flow, SimTime t0, SimTime t1);

struct RandomTrafficSpec {
    Distribution interarrival_s = Distribution::constant(1.0);
    Distribution source = Distribution::uniform(0.0, 1.0);       // index into endpoints
    Distribution destination = Distribution::uniform(0.0, 1.0);  // index into endpoints
    Distribution size_bits = Distribution::constant(static_cast<double>(kBitsPerMegabyte));
    std::vector<NodeId> endpoints;
    SimTime start_s = 0.0;
    SimTime end_s = std::numeric_limits<double>::infinity();
    std::string label = "random";

    void validate() const;
};

struct PlannedMessage {
    SimTime time = 0.0;
    NodeId source = 0;
    NodeId destination = 0;
    std::uint64_t size_bits = 0;
};

// Stateful sampler for one random spec; successive windows continue the same arrival process.
class RandomTrafficGenerator {
public:
    RandomTrafficGenerator(RandomTrafficSpec spec, std::uint64_t seed);

    std::vector<PlannedMessage> generate(SimTime t0, SimTime t1);
    std::uint64_t redraws() const { return redraws_; }
    const RandomTrafficSpec& spec() const { return spec_; }

private:
    NodeId endpoint(const Distribution& d);

    RandomTrafficSpec spec_;
    Rng rng_;
    SimTime next_;
    std::uint64_t redraws_ = 0;
};

enum class TrafficProfile : std::uint8_t { Default, Low, High, None };

TrafficProfile traffic_profile_from_string(std::string_view name);
std::string_view to_string(TrafficProfile profile);

// Flows for a profile between (pairs[i].first, pairs[i].second); the flow count comes from the profile.
std::vector<PointToPointFlow> profile_flows(TrafficProfile profile, const std::vector<std::pair<NodeId, NodeId>>& pairs);

// First 2k nodes paired in order: (0,1), (2,3), ...
std::vector<std::pair<NodeId, NodeId>> sequential_pairs(const std::vector<NodeId>& nodes, std::size_t k);

// Emits MessageCreated events in windows planned at TrafficTick events.
class TrafficActor final : public Actor {
public:
    TrafficActor(std::vector<PointToPointFlow> flows, std::vector<RandomTrafficSpec> random, std::uint64_t seed,
                 double window_s = 300.0, const ConnectivityActor* connectivity = nullptr);

    void start(Simulation& sim, SimTime t0 = 0.0);
    // No message is created at or after this time.
    void set_stop_time(SimTime t) { stop_ = t; }

    void handle(const Event& event, Simulation& sim) override;

    std::uint64_t planned() const { return planned_; }
    std::uint64_t redraws() const;
    const std::vector<PointToPointFlow>& flows() const { return flows_; }

private:
    void plan(SimTime t0, SimTime t1, Simulation& sim);
    void create(NodeId source, NodeId destination, std::uint64_t bits, const std::string& label, bool broadcast,
                SimTime t, Simulation& sim);
    void expand_broadcast(std::size_t flow, Simulation& sim);

    std::vector<PointToPointFlow> flows_;
    std::vector<RandomTrafficGenerator> generators_;
    double window_s_;
    const ConnectivityActor* connectivity_;
    SimTime stop_ = std::numeric_limits<double>::infinity();
    std::uint64_t planned_ = 0;
    std::uint64_t reported_redraws_ = 0;
};

}  // namespace spacenet
