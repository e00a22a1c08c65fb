#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spacenet/scenarios/scenario.hpp"

namespace spacenet {

// Flow endpoints given by node name; resolved against the built scenario.
struct NamedFlow {
    std::string source;
    std::string destination;
    double size_mb = 1.0;
    double interval_s = 1.0;
    double start_s = 0.0;
    std::optional<double> end_s;
    std::string label = "p2p";
    bool broadcast = false;
};

struct NamedRandomTraffic {
    RandomTrafficSpec spec;  // sizes in bits, endpoints filled from `endpoints`
    std::vector<std::string> endpoints;
};

struct RunOptions {
    std::string scenario;
    std::optional<DeliveryMode> delivery;
    std::optional<double> loss;
    std::optional<double> duration_s;
    std::optional<double> drain_s;
    std::uint64_t seed = 0;
    std::optional<double> min_time_delta_s;
    std::optional<double> lookahead_resolution_s;
    std::optional<std::uint32_t> lookahead_steps;
    std::optional<std::filesystem::path> log_out;
    std::optional<std::filesystem::path> summary_out;
    bool aggregate_only = false;
    std::optional<std::filesystem::path> tle_file;
    int walker_sats = 66;
    int walker_planes = 6;
    std::optional<TrafficProfile> traffic;
    bool replace_flows = false;
    std::vector<NamedFlow> flows;
    std::vector<NamedRandomTraffic> random_traffic;
};

// Merges a JSON config file into `options`. Keys mirror the long flag names; see README for the schema.
void load_config_file(const std::filesystem::path& path, RunOptions& options);
void apply_config_json(const std::string& text, RunOptions& options);

ScenarioSpec build_from_options(const RunOptions& options);

// Plot-ready node and link table at time t.
void write_snapshot_csv(std::ostream& out, const ScenarioSpec& spec, SimTime t);

// Entry point of the command-line tool. Returns 0 on success, 1 on configuration errors, 2 on runtime errors.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace spacenet
