#include <cmath>
#include <numbers>

#include "spacenet/core/errors.hpp"
#include "spacenet/mobility/constants.hpp"
#include "spacenet/scenarios/scenario.hpp"

namespace spacenet {

namespace {

namespace k = constants;

constexpr double kDsnBandwidth = 2e6;

const std::vector<GeoSite>& earth_sites() {
    static const std::vector<GeoSite> sites{
        {"London", 51.51, -0.13, 0.0},      {"New York", 40.71, -74.01, 0.0}, {"Tokyo", 35.68, 139.69, 0.0},
        {"Sydney", -33.87, 151.21, 0.0},    {"Sao Paulo", -23.55, -46.63, 0.0}, {"Cape Town", -33.92, 18.42, 0.0},
        {"Mumbai", 19.08, 72.88, 0.0},      {"Los Angeles", 34.05, -118.24, 0.0}, {"Singapore", 1.35, 103.82, 0.0},
        {"Nairobi", -1.29, 36.82, 0.0},     {"Reykjavik", 64.15, -21.94, 0.0}, {"Santiago", -33.45, -70.67, 0.0},
    };
    return sites;
}

const std::vector<GeoSite>& dsn_sites() {
    static const std::vector<GeoSite> sites{
        {"DSN Goldstone", 35.43, -116.89, 1.0},
        {"DSN Madrid", 40.43, -4.25, 0.8},
        {"DSN Canberra", -35.40, 148.98, 0.7},
    };
    return sites;
}

std::vector<GeoSite> grid_sites(const std::string& prefix) {
    std::vector<GeoSite> sites;
    for (const double lat : {-50.0, -15.0, 15.0, 50.0}) {
        for (const double lon : {0.0, 120.0, 240.0}) {
            sites.push_back({prefix + "-" + std::to_string(sites.size()), lat, lon + lat, 0.0});
        }
    }
    return sites;
}

OrbitalCenter earth_center(double epoch_jd, std::optional<CenterId> parent) {
    OrbitalCenter c;
    c.name = "Earth";
    c.parent = parent;
    if (parent) c.trajectory = CircularOrbit{k::kAuKm, k::kEarthOrbitPeriodS, 0.0, 0.0, 0.0};
    c.body_radius_km = k::kEarthRadiusKm;
    c.rotation_period_s = k::kEarthSiderealDayS;
    c.rotation_phase_rad = gmst_rad(epoch_jd);
    c.mu_km3_s2 = k::kEarthMuKm3S2;
    return c;
}

OrbitalCenter sun_center() {
    OrbitalCenter c;
    c.name = "Sun";
    c.body_radius_km = k::kSunRadiusKm;
    return c;
}

OrbitalCenter moon_center(CenterId earth) {
    OrbitalCenter c;
    c.name = "Moon";
    c.parent = earth;
    c.trajectory = CircularOrbit{k::kMoonOrbitRadiusKm, k::kMoonOrbitPeriodS, 5.14, 0.0, 0.0};
    c.body_radius_km = k::kMoonRadiusKm;
    c.rotation_period_s = k::kMoonOrbitPeriodS;
    c.rotation_phase_rad = std::numbers::pi;  // near side towards Earth
    c.mu_km3_s2 = k::kMoonMuKm3S2;
    return c;
}

// Phase that puts Mars about 1.5 AU from Earth at t = 0.
OrbitalCenter mars_center(CenterId sun) {
    OrbitalCenter c;
    c.name = "Mars";
    c.parent = sun;
    c.trajectory = CircularOrbit{k::kMarsOrbitRadiusAu * k::kAuKm, k::kMarsOrbitPeriodS, 0.0, 0.0, 69.4};
    c.body_radius_km = k::kMarsRadiusKm;
    c.rotation_period_s = k::kMarsSiderealDayS;
    c.mu_km3_s2 = k::kMarsMuKm3S2;
    return c;
}

WalkerParams walker(int total, int planes, int phasing, double incl, double alt, double raan_offset = 0.0,
                    double raan_spread = 360.0) {
    WalkerParams w;
    w.raan_spread_deg = raan_spread;
    w.total_sats = total;
    w.planes = planes;
    w.phasing = phasing;
    w.inclination_deg = incl;
    w.altitude_km = alt;
    w.raan_offset_deg = raan_offset;
    return w;
}

LinkRule rule(std::string name, LinkKind kind, ConstellationId first, ConstellationId second,
              std::vector<Predicate> predicates, double bandwidth_bps, Candidates candidates = AllPairs{}) {
    LinkRule r;
    r.name = std::move(name);
    r.kind = kind;
    r.first = first;
    r.second = second;
    r.candidates = std::move(candidates);
    r.predicates = std::move(predicates);
    r.bandwidth_bps = bandwidth_bps;
    return r;
}

FixedEdges all_edges(const MobilityModel& m, ConstellationId a, ConstellationId b) {
    FixedEdges e;
    for (const NodeId x : m.constellation(a).nodes) {
        for (const NodeId y : m.constellation(b).nodes) e.edges.emplace_back(x, y);
    }
    return e;
}

PointToPointFlow flow(NodeId src, NodeId dst, double megabytes, double interval_s, std::string label) {
    PointToPointFlow f;
    f.source = src;
    f.destination = dst;
    f.size_bits = static_cast<std::uint64_t>(std::llround(megabytes * static_cast<double>(kBitsPerMegabyte)));
    f.interval_s = interval_s;
    f.label = std::move(label);
    return f;
}

ScenarioSpec base(std::string name, double epoch_jd, double loss) {
    ScenarioSpec s;
    s.name = std::move(name);
    s.mobility = std::make_shared<MobilityModel>();
    s.epoch_jd = epoch_jd;
    s.loss.default_loss_probability = loss;
    return s;
}

}  // namespace

ScenarioSpec build_earth_observation() {
    ScenarioSpec s = base("earth-observation", k::kDefaultEpochJd, 0.05);
    auto& m = *s.mobility;
    const CenterId earth = m.add_center(earth_center(s.epoch_jd, std::nullopt));
    const auto control = m.add_constellation(
        "control", earth, GroundStations{{{"PCC", 49.87, 8.65, 0.1}, {"MCC", 48.08, 11.28, 0.6}}});
    const auto stations = m.add_constellation(
        "stations", earth, GroundStations{{{"GS1", 78.23, 15.41, 0.5}, {"GS2", 67.86, 20.96, 0.4}}});
    const auto sat = m.add_constellation("EO-SAT", earth, walker(1, 1, 0, 98.2, 700.0));

    s.rules.push_back(rule("terrestrial", LinkKind::Terrestrial, control, stations, {}, 1e9,
                           all_edges(m, control, stations)));
    s.rules.push_back(rule("downlink", LinkKind::GroundSpace, stations, sat, {MinElevation{5.0, EndpointSide::First}},
                           150e6));
    s.ground_space_rules = {"downlink"};

    const NodeId pcc = *m.find_node("PCC");
    const NodeId mcc = *m.find_node("MCC");
    const NodeId eo = m.constellation(sat).nodes.front();
    s.flows.push_back(flow(eo, pcc, 10.0, 11.5, "payload"));
    s.flows.push_back(flow(eo, mcc, 0.1, 30.0, "telemetry"));
    s.flows.push_back(flow(mcc, eo, 0.01, 60.0, "telecommand"));

    s.duration_s = 86400.0;
    s.drain_s = 6 * 3600.0;
    return s;
}

ScenarioSpec build_lunar() {
    ScenarioSpec s = base("lunar", k::kDefaultEpochJd, 0.05);
    auto& m = *s.mobility;
    const CenterId earth = m.add_center(earth_center(s.epoch_jd, std::nullopt));
    const CenterId moon = m.add_center(moon_center(earth));
    const auto control = m.add_constellation(
        "control", earth, GroundStations{{{"MOC", 29.56, -95.09, 0.0}, {"SOC", 34.20, -118.17, 0.3}}});
    const auto dsn = m.add_constellation("dsn", earth, GroundStations{dsn_sites()});
    const auto surface = m.add_constellation(
        "surface", moon, GroundStations{{{"Lunar Base", -89.2, 0.0, 0.0}, {"Rover", -85.5, 40.0, 0.0}}});
    const auto relays = m.add_constellation("lunar-relay", moon, walker(2, 1, 0, 90.0, 3000.0));
    const auto gateway = m.add_constellation("gateway", moon, walker(1, 1, 0, 90.0, 40000.0 - k::kMoonRadiusKm, 90.0));

    const LineOfSight moon_los{{moon}, 0.0};
    s.rules.push_back(rule("terrestrial", LinkKind::Terrestrial, control, dsn, {}, 1e9, all_edges(m, control, dsn)));
    s.rules.push_back(rule("surface-relay", LinkKind::GroundSpace, surface, relays,
                           {MinElevation{10.0, EndpointSide::First}}, 25e6));
    s.rules.push_back(rule("surface-gateway", LinkKind::GroundSpace, surface, gateway,
                           {MinElevation{10.0, EndpointSide::First}}, 25e6));
    s.rules.push_back(rule("relay-gateway", LinkKind::Isl, relays, gateway, {moon_los}, 25e6));
    s.rules.push_back(rule("dsn-relay", LinkKind::GroundSpace, dsn, relays,
                           {MinElevation{10.0, EndpointSide::First}, moon_los}, 10e6));
    s.rules.push_back(rule("dsn-gateway", LinkKind::GroundSpace, dsn, gateway,
                           {MinElevation{10.0, EndpointSide::First}, moon_los}, 10e6));
    s.ground_space_rules = {"surface-relay", "surface-gateway", "dsn-relay", "dsn-gateway"};

    const NodeId moc = *m.find_node("MOC");
    const NodeId soc = *m.find_node("SOC");
    const NodeId base_node = *m.find_node("Lunar Base");
    const NodeId rover = *m.find_node("Rover");
    s.flows.push_back(flow(rover, moc, 1.0, 10.0, "telemetry"));
    s.flows.push_back(flow(base_node, soc, 10.0, 60.0, "science"));
    s.flows.push_back(flow(moc, rover, 0.1, 30.0, "telecommand"));
    s.flows.push_back(flow(soc, base_node, 0.1, 60.0, "telecommand"));

    s.duration_s = 86400.0;
    s.drain_s = 12 * 3600.0;
    return s;
}

ScenarioSpec build_mars() {
    ScenarioSpec s = base("mars", k::kDefaultEpochJd, 0.05);
    auto& m = *s.mobility;
    const CenterId sun = m.add_center(sun_center());
    const CenterId earth = m.add_center(earth_center(s.epoch_jd, sun));
    const CenterId mars = m.add_center(mars_center(sun));
    const auto control = m.add_constellation(
        "control", earth, GroundStations{{{"MOC", 34.20, -118.17, 0.3}, {"SOC", 52.22, 4.42, 0.0}}});
    const auto dsn = m.add_constellation("dsn", earth, GroundStations{dsn_sites()});
    const auto rovers = m.add_constellation(
        "rovers", mars, GroundStations{{{"Rover A", 18.4, 77.5, 0.0}, {"Rover B", -4.6, 137.4, 0.0}}});
    const auto relays = m.add_constellation("mars-relay", mars, walker(3, 3, 1, 60.0, 6000.0));

    s.rules.push_back(rule("terrestrial", LinkKind::Terrestrial, control, dsn, {}, 1e9, all_edges(m, control, dsn)));
    s.rules.push_back(rule("rover-relay", LinkKind::GroundSpace, rovers, relays,
                           {MinElevation{10.0, EndpointSide::First}}, 8e6));
    s.rules.push_back(rule("dsn-relay", LinkKind::GroundSpace, dsn, relays,
                           {MinElevation{10.0, EndpointSide::First}, LineOfSight{{mars, sun}, 0.0}}, kDsnBandwidth));
    s.ground_space_rules = {"rover-relay", "dsn-relay"};

    const NodeId moc = *m.find_node("MOC");
    const NodeId soc = *m.find_node("SOC");
    const NodeId a = *m.find_node("Rover A");
    const NodeId b = *m.find_node("Rover B");
    s.flows.push_back(flow(a, moc, 1.0, 60.0, "telemetry"));
    s.flows.push_back(flow(b, soc, 1.0, 60.0, "science"));
    s.flows.push_back(flow(moc, a, 0.1, 300.0, "telecommand"));
    s.flows.push_back(flow(soc, b, 0.1, 300.0, "telecommand"));

    s.duration_s = 86400.0;
    s.drain_s = 24 * 3600.0;
    return s;
}

ScenarioSpec build_walker(int total_sats, int planes, TrafficProfile traffic) {
    ScenarioSpec s = base("walker", k::kDefaultEpochJd, 0.005);
    auto& m = *s.mobility;
    const CenterId earth = m.add_center(earth_center(s.epoch_jd, std::nullopt));
    WalkerParams w = walker(total_sats, planes, 1, 86.4, 781.0, 0.0, 180.0);
    if (planes <= 0 || total_sats <= 0 || total_sats % planes != 0) {
        throw InvalidWalkerParams("planes must divide the satellite count");
    }
    const auto sats = m.add_constellation("walker", earth, w);
    const auto gs = m.add_constellation("ground", earth, GroundStations{earth_sites()});

    s.rules.push_back(rule("isl", LinkKind::Isl, sats, sats, {}, 25e6, PlusGrid{}));
    s.rules.push_back(rule("ground-space", LinkKind::GroundSpace, gs, sats,
                           {MinElevation{10.0, EndpointSide::First}}, 25e6));
    s.ground_space_rules = {"ground-space"};

    const auto& g = m.constellation(gs).nodes;
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (std::size_t i = 0; i < 10; ++i) pairs.emplace_back(g[i], g[(i + 6) % 12]);
    s.flows = profile_flows(traffic, pairs);

    s.duration_s = 3600.0;
    s.drain_s = 3600.0;
    return s;
}

ScenarioSpec build_cubesat(const std::filesystem::path& tle_path) {
    ScenarioSpec s = base("cubesat", k::kDefaultEpochJd, 0.005);
    auto& m = *s.mobility;
    const CenterId earth = m.add_center(earth_center(s.epoch_jd, std::nullopt));
    TleSet set{read_tle_file(tle_path), s.epoch_jd};
    if (set.records.empty()) throw TleParseError("no TLE records in " + tle_path.string());
    const auto sats = m.add_constellation("cubesats", earth, std::move(set));
    const auto gs = m.add_constellation("ground", earth, GroundStations{earth_sites()});

    s.rules.push_back(rule("isl", LinkKind::Isl, sats, sats, {MaxRange{2500.0}, LineOfSight{{earth}, 0.0}}, 25e6));
    s.rules.push_back(rule("ground-space", LinkKind::GroundSpace, gs, sats,
                           {MinElevation{10.0, EndpointSide::First}}, 25e6));
    s.ground_space_rules = {"ground-space"};

    const auto& g = m.constellation(gs).nodes;
    for (std::size_t i = 0; i < 10; ++i) s.flows.push_back(flow(g[i], g[(i + 6) % 12], 1.0, 10.0, "p2p"));

    s.duration_s = 3600.0;
    s.drain_s = 12 * 3600.0;
    return s;
}

ScenarioSpec build_lunar_mars() {
    ScenarioSpec s = base("lunar-mars", k::kDefaultEpochJd, 0.005);
    auto& m = *s.mobility;
    const CenterId sun = m.add_center(sun_center());
    const CenterId earth = m.add_center(earth_center(s.epoch_jd, sun));
    const CenterId moon = m.add_center(moon_center(earth));
    const CenterId mars = m.add_center(mars_center(sun));

    const auto earth_walker = m.add_constellation("earth-walker", earth, walker(66, 6, 1, 86.4, 781.0, 0.0, 180.0));
    const auto earth_gs = m.add_constellation("earth-ground", earth, GroundStations{earth_sites()});
    const auto dsn = m.add_constellation("dsn", earth, GroundStations{dsn_sites()});
    const auto moon_walker = m.add_constellation("lunar-walker", moon, walker(8, 2, 1, 90.0, 1500.0, 0.0, 180.0));
    const auto moon_gs = m.add_constellation("lunar-ground", moon, GroundStations{grid_sites("Lunar GS")});
    const auto moon_relay = m.add_constellation("lunar-relay", moon, walker(1, 1, 0, 90.0, 8000.0, 90.0));
    const auto mars_walker = m.add_constellation("mars-walker", mars, walker(66, 6, 1, 86.4, 781.0, 0.0, 180.0));
    const auto mars_gs = m.add_constellation("mars-ground", mars, GroundStations{grid_sites("Mars GS")});
    const auto mars_relay = m.add_constellation("mars-relay", mars, walker(1, 1, 0, 0.0, 17000.0));

    const MinElevation gs_mask{10.0, EndpointSide::First};
    s.rules.push_back(rule("earth-isl", LinkKind::Isl, earth_walker, earth_walker, {}, 25e6, PlusGrid{}));
    s.rules.push_back(rule("earth-ground", LinkKind::GroundSpace, earth_gs, earth_walker, {gs_mask}, 25e6));
    s.rules.push_back(rule("dsn-walker", LinkKind::GroundSpace, dsn, earth_walker, {gs_mask}, 25e6));
    s.rules.push_back(rule("lunar-isl", LinkKind::Isl, moon_walker, moon_walker, {}, 25e6, PlusGrid{}));
    s.rules.push_back(rule("lunar-ground", LinkKind::GroundSpace, moon_gs, moon_walker, {gs_mask}, 25e6));
    s.rules.push_back(rule("lunar-relay", LinkKind::Ill, moon_walker, moon_relay, {LineOfSight{{moon}, 0.0}}, 25e6));
    s.rules.push_back(rule("dsn-lunar-relay", LinkKind::Ill, dsn, moon_relay, {gs_mask, LineOfSight{{moon}, 0.0}},
                           10e6));
    s.rules.push_back(rule("mars-isl", LinkKind::Isl, mars_walker, mars_walker, {}, 25e6, PlusGrid{}));
    s.rules.push_back(rule("mars-ground", LinkKind::GroundSpace, mars_gs, mars_walker, {gs_mask}, 25e6));
    s.rules.push_back(rule("mars-relay", LinkKind::Ill, mars_walker, mars_relay, {LineOfSight{{mars}, 0.0}}, 25e6));
    s.rules.push_back(rule("dsn-mars-relay", LinkKind::Ill, dsn, mars_relay,
                           {gs_mask, LineOfSight{{mars, sun}, 0.0}}, kDsnBandwidth));
    s.ground_space_rules = {"earth-ground", "dsn-walker", "lunar-ground", "mars-ground"};

    const auto& eg = m.constellation(earth_gs).nodes;
    const auto& lg = m.constellation(moon_gs).nodes;
    const auto& mg = m.constellation(mars_gs).nodes;
    for (std::size_t i = 0; i < 4; ++i) s.flows.push_back(flow(eg[i], lg[3 * i], 1.0, 10.0, "earth-moon"));
    for (std::size_t i = 0; i < 2; ++i) s.flows.push_back(flow(lg[3 * i + 1], eg[i + 4], 1.0, 10.0, "moon-earth"));
    for (std::size_t i = 0; i < 2; ++i) s.flows.push_back(flow(eg[i + 6], mg[5 * i], 1.0, 60.0, "earth-mars"));
    for (std::size_t i = 0; i < 2; ++i) s.flows.push_back(flow(mg[5 * i + 2], eg[i + 8], 1.0, 60.0, "mars-earth"));

    s.duration_s = 3600.0;
    s.drain_s = 24 * 3600.0;
    return s;
}

std::filesystem::path default_tle_path() {
    const std::filesystem::path source_data = std::filesystem::path(SPACENET_SOURCE_DIR) / "data" / "cubesats.tle";
    if (std::filesystem::exists(source_data)) return source_data;
    return "data/cubesats.tle";
}

std::vector<std::string> scenario_names() {
    return {"earth-observation", "lunar", "mars", "walker", "cubesat", "lunar-mars"};
}

bool is_ccsds_scenario(const std::string& name) {
    return name == "earth-observation" || name == "lunar" || name == "mars";
}

ScenarioSpec build_scenario(const std::string& name, const ScenarioOptions& options) {
    const TrafficProfile traffic = options.traffic.value_or(TrafficProfile::Default);
    ScenarioSpec spec;
    if (name == "earth-observation" || name == "eo") {
        spec = build_earth_observation();
    } else if (name == "lunar") {
        spec = build_lunar();
    } else if (name == "mars") {
        spec = build_mars();
    } else if (name == "walker") {
        spec = build_walker(options.walker_sats, options.walker_planes, traffic);
    } else if (name == "cubesat") {
        spec = build_cubesat(options.tle_file.value_or(default_tle_path()));
    } else if (name == "lunar-mars") {
        spec = build_lunar_mars();
    } else {
        throw ConfigError("unknown scenario '" + name + "'");
    }
    if (options.traffic && name != "walker") {
        std::vector<std::pair<NodeId, NodeId>> pairs;
        for (const auto& f : spec.flows) {
            if (!f.broadcast) pairs.emplace_back(f.source, f.destination);
        }
        const std::size_t n = pairs.size();
        for (std::size_t i = n; n > 0 && i < 10; ++i) pairs.push_back(pairs[i % n]);
        spec.flows = profile_flows(traffic, pairs);
    }
    spec.validate();
    return spec;
}

}  // namespace spacenet
