#include "spacenet/cli/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <sys/resource.h>

#include "spacenet/core/errors.hpp"
#include "spacenet/metrics/stats.hpp"

namespace spacenet {

namespace {

using json = nlohmann::json;

Distribution parse_distribution(const json& j) {
    if (j.is_number()) return Distribution::constant(j.get<double>());
    Distribution d;
    d.kind = distribution_kind_from_string(j.at("kind").get<std::string>());
    switch (d.kind) {
        case Distribution::Kind::Constant: d.a = j.at("value").get<double>(); break;
        case Distribution::Kind::Uniform:
            d.a = j.at("low").get<double>();
            d.b = j.at("high").get<double>();
            break;
        case Distribution::Kind::Gaussian:
            d.a = j.at("mean").get<double>();
            d.b = j.at("stddev").get<double>();
            break;
        case Distribution::Kind::Pareto:
            d.a = j.at("scale").get<double>();
            d.b = j.at("shape").get<double>();
            break;
    }
    return d;
}

// Unit conversion; the Pareto shape is dimensionless.
Distribution scaled(Distribution d, double factor) {
    d.a *= factor;
    if (d.kind != Distribution::Kind::Pareto) d.b *= factor;
    return d;
}

NodeId resolve(const MobilityModel& m, const std::string& name) {
    if (const auto id = m.find_node(name)) return *id;
    throw UnknownNode("unknown node '" + name + "'");
}

std::string fmt(double v, int precision) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
    return std::string(buf, r.ptr);
}

// High-water resident set of this process image. ru_maxrss also counts the parent's pages at fork time.
std::optional<double> peak_resident_kb() {
    std::ifstream status("/proc/self/status");
    std::string line;
    while (std::getline(status, line)) {
        if (line.rfind("VmHWM:", 0) == 0) return std::stod(line.substr(6));
    }
    rusage usage{};
    if (getrusage(RUSAGE_SELF, &usage) == 0) return static_cast<double>(usage.ru_maxrss);
    return std::nullopt;
}

void print_stats(std::ostream& out, const AggregateStats& s, const RunResult* run, double wall_s) {
    out << "scenario             " << s.scenario << '\n'
        << "delivery             " << s.mode << '\n'
        << "loss                 " << fmt(100.0 * s.loss_probability, 2) << " %\n"
        << "run length           " << fmt(s.run_length_s, 1) << " s\n"
        << "created              " << s.created << '\n'
        << "delivered            " << s.delivered << " (" << fmt(s.delivered_pct, 2) << " %)\n"
        << "dropped              " << s.dropped << " (" << fmt(s.dropped_pct, 2) << " %)\n"
        << "lost                 " << s.lost << " (" << fmt(s.lost_pct, 2) << " %)\n"
        << "residual             " << s.residual << " (" << fmt(s.residual_pct, 2) << " %)\n"
        << "mean latency         " << fmt(s.mean_latency_s, 2) << " s\n"
        << "mean hops            " << fmt(s.mean_hops, 2) << '\n'
        << "mean utilization     " << fmt(s.mean_link_utilization_pct, 2) << " %\n"
        << "max utilization      " << fmt(s.max_link_utilization_pct, 2) << " %\n";
    for (const auto& [reason, n] : s.dropped_by_reason) out << "  dropped " << to_string(reason) << ": " << n << '\n';
    if (run) {
        out << "events               " << run->engine.events_processed << '\n'
            << "wall time            " << fmt(wall_s, 2) << " s\n";
        if (const auto kb = peak_resident_kb()) out << "peak memory          " << fmt(*kb / 1024.0, 1) << " MB\n";
    }
}

template <typename T>
void set_if(const json& j, const char* key, std::optional<T>& target) {
    if (j.contains(key)) target = j.at(key).get<T>();
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const UnknownNode*>(&e) ||
        dynamic_cast<const UnknownCenter*>(&e) || dynamic_cast<const InvalidWalkerParams*>(&e) ||
        dynamic_cast<const TleParseError*>(&e) || dynamic_cast<const json::exception*>(&e)) {
        return 1;
    }
    return 2;
}

}  // namespace

void apply_config_json(const std::string& text, RunOptions& o) {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    if (j.contains("scenario")) o.scenario = j.at("scenario").get<std::string>();
    if (j.contains("delivery")) o.delivery = delivery_mode_from_string(j.at("delivery").get<std::string>());
    set_if(j, "loss", o.loss);
    set_if(j, "duration", o.duration_s);
    set_if(j, "drain", o.drain_s);
    if (j.contains("seed")) o.seed = j.at("seed").get<std::uint64_t>();
    set_if(j, "min-time-delta", o.min_time_delta_s);
    set_if(j, "lookahead-resolution", o.lookahead_resolution_s);
    set_if(j, "lookahead-steps", o.lookahead_steps);
    if (j.contains("out")) o.log_out = j.at("out").get<std::string>();
    if (j.contains("summary-out")) o.summary_out = j.at("summary-out").get<std::string>();
    if (j.contains("aggregate-only")) o.aggregate_only = j.at("aggregate-only").get<bool>();
    if (j.contains("tle-file")) o.tle_file = j.at("tle-file").get<std::string>();
    if (j.contains("walker-sats")) o.walker_sats = j.at("walker-sats").get<int>();
    if (j.contains("walker-planes")) o.walker_planes = j.at("walker-planes").get<int>();
    if (j.contains("traffic")) o.traffic = traffic_profile_from_string(j.at("traffic").get<std::string>());
    if (j.contains("replace-flows")) o.replace_flows = j.at("replace-flows").get<bool>();
    if (j.contains("flows")) {
        for (const auto& f : j.at("flows")) {
            NamedFlow nf;
            nf.source = f.at("source").get<std::string>();
            nf.broadcast = f.value("broadcast", false);
            if (!nf.broadcast) nf.destination = f.at("destination").get<std::string>();
            nf.size_mb = f.value("size_mb", 1.0);
            nf.interval_s = f.value("interval_s", 1.0);
            nf.start_s = f.value("start_s", 0.0);
            if (f.contains("end_s")) nf.end_s = f.at("end_s").get<double>();
            nf.label = f.value("label", std::string("p2p"));
            o.flows.push_back(std::move(nf));
        }
    }
    if (j.contains("random_traffic")) {
        for (const auto& r : j.at("random_traffic")) {
            NamedRandomTraffic nr;
            nr.endpoints = r.at("endpoints").get<std::vector<std::string>>();
            const double n = static_cast<double>(nr.endpoints.size());
            if (r.contains("interarrival_s")) nr.spec.interarrival_s = parse_distribution(r.at("interarrival_s"));
            nr.spec.source = r.contains("source") ? parse_distribution(r.at("source")) : Distribution::uniform(0.0, n);
            nr.spec.destination =
                r.contains("destination") ? parse_distribution(r.at("destination")) : Distribution::uniform(0.0, n);
            if (r.contains("size_mb")) {
                nr.spec.size_bits = scaled(parse_distribution(r.at("size_mb")), static_cast<double>(kBitsPerMegabyte));
            }
            nr.spec.start_s = r.value("start_s", 0.0);
            if (r.contains("end_s")) nr.spec.end_s = r.at("end_s").get<double>();
            nr.spec.label = r.value("label", std::string("random"));
            o.random_traffic.push_back(std::move(nr));
        }
    }
}

void load_config_file(const std::filesystem::path& path, RunOptions& options) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    apply_config_json(buf.str(), options);
}

ScenarioSpec build_from_options(const RunOptions& o) {
    if (o.scenario.empty()) throw ConfigError("no scenario given");
    ScenarioOptions so;
    so.tle_file = o.tle_file;
    so.walker_sats = o.walker_sats;
    so.walker_planes = o.walker_planes;
    so.traffic = o.traffic;
    ScenarioSpec spec = build_scenario(o.scenario, so);
    if (o.delivery) spec.mode = *o.delivery;
    if (o.loss) spec.loss.default_loss_probability = *o.loss;
    if (o.duration_s) spec.duration_s = *o.duration_s;
    if (o.drain_s) spec.drain_s = *o.drain_s;
    if (o.min_time_delta_s) spec.min_time_delta_s = *o.min_time_delta_s;
    if (o.lookahead_resolution_s) spec.lookahead.resolution_s = *o.lookahead_resolution_s;
    if (o.lookahead_steps) spec.lookahead.num_steps = *o.lookahead_steps;
    if (o.replace_flows) {
        spec.flows.clear();
        spec.random_traffic.clear();
    }
    const auto& m = *spec.mobility;
    for (const auto& nf : o.flows) {
        PointToPointFlow f;
        f.source = resolve(m, nf.source);
        f.destination = nf.broadcast ? f.source : resolve(m, nf.destination);
        f.size_bits = static_cast<std::uint64_t>(std::llround(nf.size_mb * static_cast<double>(kBitsPerMegabyte)));
        f.interval_s = nf.interval_s;
        f.start_s = nf.start_s;
        if (nf.end_s) f.end_s = *nf.end_s;
        f.label = nf.label;
        f.broadcast = nf.broadcast;
        spec.flows.push_back(f);
    }
    for (const auto& nr : o.random_traffic) {
        RandomTrafficSpec r = nr.spec;
        for (const auto& name : nr.endpoints) r.endpoints.push_back(resolve(m, name));
        spec.random_traffic.push_back(std::move(r));
    }
    spec.validate();
    return spec;
}

void write_snapshot_csv(std::ostream& out, const ScenarioSpec& spec, SimTime t) {
    const auto topology = std::make_shared<const TopologyModel>(spec.mobility, spec.rules);
    const TopologySnapshot snap = topology->compute(t);
    const auto& m = *spec.mobility;
    const auto& pos = *snap.positions;
    out << "record,id,a,b,name,group,kind,x_km,y_km,z_km,length_km\n";
    for (NodeId n = 0; n < m.node_count(); ++n) {
        const auto& c = m.constellation(m.constellation_of(n));
        out << "node," << n << ",,," << '"' << m.node_name(n) << '"' << ',' << c.name << ','
            << (m.is_ground_station(n) ? "ground" : "space") << ',' << fmt(pos[n].x, 3) << ',' << fmt(pos[n].y, 3)
            << ',' << fmt(pos[n].z, 3) << ",\n";
    }
    std::size_t i = 0;
    for (const auto& link : snap.links) {
        const auto& rule = topology->rules()[link.rule];
        out << "link," << i++ << ',' << link.id.a() << ',' << link.id.b() << ",," << rule.name << ','
            << to_string(rule.kind) << ",,,," << fmt(distance(pos[link.id.a()], pos[link.id.b()]), 3) << '\n';
    }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Delay-tolerant space network simulator"};
    app.require_subcommand(1);

    RunOptions opts;
    std::optional<std::string> delivery;
    std::optional<std::string> traffic;
    std::optional<std::string> config;
    std::optional<std::string> log_out;
    std::optional<std::string> summary_out;
    std::optional<std::string> tle_file;
    std::optional<std::uint64_t> seed;
    std::optional<int> walker_sats;
    std::optional<int> walker_planes;
    bool aggregate_only = false;

    auto add_scenario_flags = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", opts.scenario, "Scenario name (see `list`)");
        cmd->add_option("--config", config, "JSON config file; flags override its values");
        cmd->add_option("--tle-file", tle_file, "TLE file for the cubesat scenario");
        cmd->add_option("--walker-sats", walker_sats, "Walker satellite count");
        cmd->add_option("--walker-planes", walker_planes, "Walker plane count");
        cmd->add_option("--traffic", traffic, "Traffic profile: default, low, high, none");
        cmd->add_option("--duration", opts.duration_s, "Traffic duration in seconds");
    };

    CLI::App* run = app.add_subcommand("run", "Run a scenario");
    add_scenario_flags(run);
    run->add_option("--delivery", delivery, "best-effort, saf or ltp");
    run->add_option("--loss", opts.loss, "Per-link loss probability");
    run->add_option("--seed", seed, "Random seed");
    run->add_option("--drain", opts.drain_s, "Extra time to deliver buffered messages after traffic stops");
    run->add_option("--min-time-delta", opts.min_time_delta_s, "Minimum time between model refreshes");
    run->add_option("--lookahead-resolution", opts.lookahead_resolution_s, "Lookahead sample spacing in seconds");
    run->add_option("--lookahead-steps", opts.lookahead_steps, "Number of lookahead samples");
    run->add_option("--out", log_out, "Event log path (.jsonl or .jsonl.gz)");
    run->add_option("--summary-out", summary_out, "Summary CSV path");
    run->add_flag("--aggregate-only", aggregate_only, "Do not persist events");

    SimTime snapshot_time = 0.0;
    CLI::App* snap = app.add_subcommand("snapshot", "Export node positions and active links");
    add_scenario_flags(snap);
    snap->add_option("--time,-t", snapshot_time, "Simulation time in seconds");
    snap->add_option("--out", log_out, "CSV path (stdout when omitted)");

    std::string log_in;
    std::optional<std::string> saturation_link;
    double bin_s = 60.0;
    std::size_t histogram_bins = 0;
    CLI::App* summarize_cmd = app.add_subcommand("summarize", "Summarize a stored event log");
    summarize_cmd->add_option("--log", log_in, "Event log path")->required();
    summarize_cmd->add_option("--summary-out", summary_out, "Summary CSV path");
    summarize_cmd->add_option("--saturation", saturation_link, "Print the saturation series of link a-b");
    summarize_cmd->add_option("--bin", bin_s, "Saturation bin width in seconds");
    summarize_cmd->add_option("--histogram", histogram_bins, "Print a latency histogram with this many bins");

    app.add_subcommand("list", "List scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand("list")) {
            for (const auto& name : scenario_names()) out << name << '\n';
            return 0;
        }
        if (summarize_cmd->parsed()) {
            const auto log = read_log(log_in);
            const AggregateStats stats = summarize(log);
            print_stats(out, stats, nullptr, 0.0);
            if (summary_out) {
                std::ofstream f(*summary_out);
                write_summary_csv(f, {stats});
            }
            if (saturation_link) {
                out << "t,utilization_pct\n";
                for (const auto& b : saturation_timeseries(log, LinkId::parse(*saturation_link), bin_s)) {
                    out << fmt(b.t, 3) << ',' << fmt(b.utilization_pct, 3) << '\n';
                }
            }
            if (histogram_bins > 0) {
                const Histogram h = latency_histogram(log, histogram_bins);
                out << "latency_lo_s,count\n";
                for (std::size_t i = 0; i < h.counts.size(); ++i) {
                    out << fmt(h.lo + static_cast<double>(i) * h.width, 3) << ',' << h.counts[i] << '\n';
                }
            }
            return 0;
        }

        RunOptions merged;
        if (config) load_config_file(*config, merged);
        if (!opts.scenario.empty()) merged.scenario = opts.scenario;
        if (delivery) merged.delivery = delivery_mode_from_string(*delivery);
        if (traffic) merged.traffic = traffic_profile_from_string(*traffic);
        if (opts.loss) merged.loss = opts.loss;
        if (opts.duration_s) merged.duration_s = opts.duration_s;
        if (opts.drain_s) merged.drain_s = opts.drain_s;
        if (seed) merged.seed = *seed;
        if (opts.min_time_delta_s) merged.min_time_delta_s = opts.min_time_delta_s;
        if (opts.lookahead_resolution_s) merged.lookahead_resolution_s = opts.lookahead_resolution_s;
        if (opts.lookahead_steps) merged.lookahead_steps = opts.lookahead_steps;
        if (log_out) merged.log_out = *log_out;
        if (summary_out) merged.summary_out = *summary_out;
        if (aggregate_only) merged.aggregate_only = true;
        if (tle_file) merged.tle_file = *tle_file;
        if (walker_sats) merged.walker_sats = *walker_sats;
        if (walker_planes) merged.walker_planes = *walker_planes;

        const ScenarioSpec spec = build_from_options(merged);

        if (snap->parsed()) {
            if (!(snapshot_time >= 0.0) || snapshot_time > spec.duration_s + spec.drain_s) {
                throw ConfigError("snapshot time must lie within the scenario run");
            }
            if (merged.log_out) {
                std::ofstream f(*merged.log_out);
                if (!f) throw ConfigError("cannot write " + merged.log_out->string());
                write_snapshot_csv(f, spec, snapshot_time);
            } else {
                write_snapshot_csv(out, spec, snapshot_time);
            }
            return 0;
        }

        std::unique_ptr<LogSink> sink;
        if (merged.log_out && !merged.aggregate_only) {
            sink = std::make_unique<JsonlFileSink>(*merged.log_out);
        } else {
            sink = std::make_unique<NullSink>();
        }
        const auto wall_start = std::chrono::steady_clock::now();
        ScenarioRunner runner(spec, *sink, merged.seed);
        const RunResult result = runner.run();
        sink->flush();
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
        print_stats(out, result.stats, &result, wall);
        if (merged.summary_out) {
            std::ofstream f(*merged.summary_out);
            if (!f) throw ConfigError("cannot write " + merged.summary_out->string());
            write_summary_csv(f, {result.stats});
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

}  // namespace spacenet
