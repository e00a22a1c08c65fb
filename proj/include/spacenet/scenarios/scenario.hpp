#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spacenet/connectivity/connectivity_actor.hpp"
#include "spacenet/connectivity/link_rule.hpp"
#include "spacenet/ltp/ltp.hpp"
#include "spacenet/metrics/log_sink.hpp"
#include "spacenet/metrics/stats.hpp"
#include "spacenet/mobility/mobility_model.hpp"
#include "spacenet/routing/lookahead.hpp"
#include "spacenet/traffic/traffic.hpp"
#include "spacenet/transport/routing.hpp"
#include "spacenet/transport/transport.hpp"

namespace spacenet {

// A complete simulation configuration. Swapping `mode` changes nothing else.
struct ScenarioSpec {
    std::string name;
    std::shared_ptr<MobilityModel> mobility;
    std::vector<LinkRule> rules;
    std::vector<PointToPointFlow> flows;
    std::vector<RandomTrafficSpec> random_traffic;
    LossConfig loss;
    DeliveryMode mode = DeliveryMode::StoreAndForward;
    double duration_s = 3600.0;
    double drain_s = 0.0;  // run continues this long after traffic stops
    double epoch_jd = 0.0;
    double min_time_delta_s = 0.01;
    double routing_update_s = 10.0;
    LookaheadConfig lookahead;
    LtpConfig ltp;
    std::vector<std::string> ground_space_rules;  // rule names whose links touch the ground

    void validate() const;
    std::vector<NodeId> nodes_of(const std::string& constellation) const;
};

struct ScenarioOptions {
    std::optional<std::filesystem::path> tle_file;
    int walker_sats = 66;
    int walker_planes = 6;
    std::optional<TrafficProfile> traffic;
};

ScenarioSpec build_earth_observation();
ScenarioSpec build_lunar();
ScenarioSpec build_mars();
ScenarioSpec build_walker(int total_sats = 66, int planes = 6, TrafficProfile traffic = TrafficProfile::Default);
ScenarioSpec build_cubesat(const std::filesystem::path& tle_path);
ScenarioSpec build_lunar_mars();

// Bundled CubeSat snapshot, located next to the sources or the installed binary.
std::filesystem::path default_tle_path();

std::vector<std::string> scenario_names();
bool is_ccsds_scenario(const std::string& name);
// Throws ConfigError for unknown names.
ScenarioSpec build_scenario(const std::string& name, const ScenarioOptions& options = {});

struct RunResult {
    AggregateStats stats;
    RunSummary engine;
    LtpCounters ltp;
    std::uint64_t link_changes = 0;
    std::uint64_t lookahead_samples = 0;
};

// Assembles the actors of a scenario and runs it, streaming records to `sink`.
class ScenarioRunner {
public:
    ScenarioRunner(ScenarioSpec spec, LogSink& sink, std::uint64_t seed = 0);
    ~ScenarioRunner();
    ScenarioRunner(const ScenarioRunner&) = delete;
    ScenarioRunner& operator=(const ScenarioRunner&) = delete;

    // Extra actors dispatched after traffic and before transport; must be added before run().
    void add_probe(Actor& actor);
    // Transmission-level tweak hook for tests.
    TransportActor& transport();
    const ConnectivityActor& connectivity() const;
    const ScenarioSpec& spec() const { return spec_; }
    std::shared_ptr<const TopologyModel> topology() const { return topology_; }

    RunResult run();

private:
    struct Parts;

    ScenarioSpec spec_;
    LogSink& sink_;
    std::uint64_t seed_;
    std::shared_ptr<const TopologyModel> topology_;
    std::unique_ptr<Parts> parts_;
    std::vector<Actor*> probes_;
};

}  // namespace spacenet
