#include <algorithm>
#include <cmath>
#include <set>

#include "spacenet/core/errors.hpp"
#include "spacenet/scenarios/scenario.hpp"

namespace spacenet {

void ScenarioSpec::validate() const {
    if (!mobility) throw ConfigError("scenario " + name + " has no mobility model");
    if (!(duration_s > 0.0)) throw ConfigError("duration must be positive");
    if (!(drain_s >= 0.0)) throw ConfigError("drain period must be non-negative");
    if (!(min_time_delta_s >= 0.0)) throw ConfigError("minimum time delta must be non-negative");
    if (!(routing_update_s > 0.0)) throw ConfigError("routing update period must be positive");
    loss.validate();
    lookahead.validate();
    ltp.validate();
    const auto n = mobility->node_count();
    for (const auto& f : flows) {
        f.validate();
        if (f.source >= n || (!f.broadcast && f.destination >= n)) throw UnknownNode("flow references an unknown node");
    }
    for (const auto& r : random_traffic) {
        r.validate();
        for (const NodeId e : r.endpoints) {
            if (e >= n) throw UnknownNode("random traffic references an unknown node");
        }
    }
    std::set<std::string> names;
    for (const auto& r : rules) names.insert(r.name);
    for (const auto& g : ground_space_rules) {
        if (!names.contains(g)) throw ConfigError("unknown ground-space rule " + g);
    }
}

std::vector<NodeId> ScenarioSpec::nodes_of(const std::string& constellation) const {
    const auto id = mobility->find_constellation(constellation);
    if (!id) throw ConfigError("unknown constellation " + constellation);
    return mobility->constellation(*id).nodes;
}

namespace {

// Messages not yet received or dropped.
class OutstandingCounter final : public EventObserver {
public:
    void on_dispatch(const Event& event) override {
        switch (event.kind()) {
            case EventKind::MessageCreated: ++open_; break;
            case EventKind::MessageReceived:
            case EventKind::MessageDropped: --open_; break;
            default: break;
        }
    }
    std::int64_t open() const { return open_; }

private:
    std::int64_t open_ = 0;
};

}  // namespace

struct ScenarioRunner::Parts {
    Parts(const ScenarioSpec& spec, std::shared_ptr<const TopologyModel> topology, LogSink& sink, std::uint64_t seed)
        : sim(SimulationConfig{spec.min_time_delta_s, spec.duration_s + spec.drain_s, seed}),
          connectivity(topology, spec.routing_update_s),
          traffic(spec.flows, spec.random_traffic, seed, 300.0, &connectivity),
          transport(topology, with_seed(spec.loss, seed), &tee),
          ltp(spec.ltp, transport),
          routes(connectivity, spec.lookahead),
          routing(spec.mode, routes, transport, &ltp),
          logger(tee) {
        tee.add(sink);
        tee.add(stats);
        traffic.set_stop_time(spec.duration_s);
    }

    static LossConfig with_seed(LossConfig loss, std::uint64_t seed) {
        loss.seed = seed;
        return loss;
    }

    TeeSink tee;
    StatsAccumulator stats;
    Simulation sim;
    ConnectivityActor connectivity;
    TrafficActor traffic;
    TransportActor transport;
    LtpActor ltp;
    RoutingDataProvider routes;
    MessageRoutingActor routing;
    EventLogger logger;
    OutstandingCounter outstanding;
};

ScenarioRunner::ScenarioRunner(ScenarioSpec spec, LogSink& sink, std::uint64_t seed)
    : spec_(std::move(spec)), sink_(sink), seed_(seed) {
    spec_.validate();
    topology_ = std::make_shared<const TopologyModel>(spec_.mobility, spec_.rules);
    parts_ = std::make_unique<Parts>(spec_, topology_, sink_, seed_);
}

ScenarioRunner::~ScenarioRunner() = default;

void ScenarioRunner::add_probe(Actor& actor) { probes_.push_back(&actor); }

TransportActor& ScenarioRunner::transport() { return parts_->transport; }

const ConnectivityActor& ScenarioRunner::connectivity() const { return parts_->connectivity; }

RunResult ScenarioRunner::run() {
    auto& p = *parts_;
    p.sim.add_actor(p.connectivity);
    p.sim.add_actor(p.traffic);
    for (Actor* probe : probes_) p.sim.add_actor(*probe);
    p.sim.add_actor(p.transport);
    if (spec_.mode == DeliveryMode::Ltp) p.sim.add_actor(p.ltp);
    p.sim.add_actor(p.routing);
    p.sim.add_refresher(p.connectivity);
    p.sim.add_observer(p.logger);
    p.sim.add_observer(p.outstanding);

    LogRecord start;
    start.t = 0.0;
    start.kind = RecordKind::RunStart;
    start.label = spec_.name;
    start.detail = std::string(to_string(spec_.mode));
    start.count = static_cast<std::int64_t>(seed_);
    start.dur = spec_.loss.default_loss_probability;
    p.tee.write(start);

    p.sim.initialize(0.0);
    p.connectivity.start(p.sim, 0.0);
    p.traffic.start(p.sim, 0.0);

    RunSummary summary = p.sim.run(spec_.duration_s);
    const SimTime limit = spec_.duration_s + spec_.drain_s;
    SimTime end = spec_.duration_s;
    while (end < limit && p.outstanding.open() > 0) {
        end = std::min(limit, end + 60.0);
        summary = p.sim.run(end);
    }
    summary.final_time = end;
    summary.events_processed = p.sim.events_processed();

    LogRecord finish;
    finish.t = end;
    finish.kind = RecordKind::RunEnd;
    finish.label = spec_.name;
    p.tee.write(finish);
    p.tee.flush();

    RunResult result;
    result.stats = p.stats.result();
    result.engine = summary;
    result.ltp = p.ltp.counters();
    result.link_changes = p.connectivity.link_changes();
    if (spec_.mode != DeliveryMode::BestEffort) result.lookahead_samples = p.routes.lookahead().samples_computed();
    return result;
}

}  // namespace spacenet
