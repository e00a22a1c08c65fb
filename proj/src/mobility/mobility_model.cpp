#include "spacenet/mobility/mobility_model.hpp"

#include <cmath>
#include <string>

#include "spacenet/core/errors.hpp"

namespace spacenet {

namespace {

Vec3 rotate_z(const Vec3& v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

std::size_t kind_size(const ConstellationKind& kind) {
    return std::visit(
        [](const auto& k) -> std::size_t {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, FixedPoints>) return k.points.size();
            if constexpr (std::is_same_v<K, GroundStations>) return k.sites.size();
            if constexpr (std::is_same_v<K, WalkerParams>) return static_cast<std::size_t>(k.total_sats);
            if constexpr (std::is_same_v<K, TleSet>) return k.records.size();
        },
        kind);
}

}  // namespace

CenterId MobilityModel::add_center(OrbitalCenter center) {
    if (center.parent && *center.parent >= centers_.size()) {
        throw UnknownCenter("parent center " + std::to_string(*center.parent) + " does not exist");
    }
    if (center.body_radius_km < 0.0) throw ConfigError("body radius must be >= 0");
    centers_.push_back(std::move(center));
    return static_cast<CenterId>(centers_.size() - 1);
}

ConstellationId MobilityModel::add_constellation(std::string name, CenterId center, ConstellationKind kind) {
    if (center >= centers_.size()) throw UnknownCenter("center " + std::to_string(center) + " does not exist");
    if (const auto* w = std::get_if<WalkerParams>(&kind)) w->validate();
    const auto id = static_cast<ConstellationId>(constellations_.size());
    Constellation c{std::move(name), center, std::move(kind), {}, {}};
    const std::size_t n = kind_size(c.kind);
    std::vector<Sgp4Propagator> props;
    if (const auto* tle = std::get_if<TleSet>(&c.kind)) {
        props.reserve(tle->records.size());
        for (const auto& rec : tle->records) props.emplace_back(rec);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto node = static_cast<NodeId>(nodes_.size());
        nodes_.push_back({id, static_cast<std::uint32_t>(i)});
        c.nodes.push_back(node);
        std::string label;
        if (const auto* gs = std::get_if<GroundStations>(&c.kind); gs && !gs->sites[i].name.empty()) {
            label = gs->sites[i].name;
        } else if (const auto* tle = std::get_if<TleSet>(&c.kind); tle && !tle->records[i].name.empty()) {
            label = tle->records[i].name;
        } else {
            label = n == 1 ? c.name : c.name + "-" + std::to_string(i);
        }
        c.node_names.push_back(std::move(label));
    }
    constellations_.push_back(std::move(c));
    propagators_.push_back(std::move(props));
    return id;
}

const OrbitalCenter& MobilityModel::center(CenterId id) const {
    if (id >= centers_.size()) throw UnknownCenter("center " + std::to_string(id) + " does not exist");
    return centers_[id];
}

const Constellation& MobilityModel::constellation(ConstellationId id) const {
    if (id >= constellations_.size()) throw ConfigError("constellation " + std::to_string(id) + " does not exist");
    return constellations_[id];
}

std::optional<CenterId> MobilityModel::find_center(const std::string& name) const {
    for (std::size_t i = 0; i < centers_.size(); ++i) {
        if (centers_[i].name == name) return static_cast<CenterId>(i);
    }
    return std::nullopt;
}

std::optional<ConstellationId> MobilityModel::find_constellation(const std::string& name) const {
    for (std::size_t i = 0; i < constellations_.size(); ++i) {
        if (constellations_[i].name == name) return static_cast<ConstellationId>(i);
    }
    return std::nullopt;
}

std::optional<NodeId> MobilityModel::find_node(const std::string& name) const {
    for (NodeId n = 0; n < nodes_.size(); ++n) {
        if (node_name(n) == name) return n;
    }
    return std::nullopt;
}

ConstellationId MobilityModel::constellation_of(NodeId node) const {
    if (node >= nodes_.size()) throw UnknownNode("node " + std::to_string(node) + " does not exist");
    return nodes_[node].constellation;
}

CenterId MobilityModel::center_of(NodeId node) const { return constellations_[constellation_of(node)].center; }

const std::string& MobilityModel::node_name(NodeId node) const {
    const auto& ref = nodes_.at(node);
    return constellations_[ref.constellation].node_names[ref.index];
}

bool MobilityModel::is_ground_station(NodeId node) const {
    return std::holds_alternative<GroundStations>(constellations_[constellation_of(node)].kind);
}

Vec3 MobilityModel::center_position(CenterId id, SimTime t) const {
    Vec3 pos;
    std::optional<CenterId> cur = id;
    std::size_t depth = 0;
    while (cur) {
        const auto& c = center(*cur);
        pos += trajectory_position(c.trajectory, t);
        cur = c.parent;
        if (++depth > centers_.size()) throw UnknownCenter("center hierarchy contains a cycle");
    }
    return pos;
}

Vec3 MobilityModel::relative_position(const Constellation& c, std::uint32_t index, SimTime t) const {
    const auto& body = centers_[c.center];
    return std::visit(
        [&](const auto& k) -> Vec3 {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, FixedPoints>) {
                return k.points[index];
            } else if constexpr (std::is_same_v<K, GroundStations>) {
                return rotate_z(geodetic_to_body(k.sites[index], body.body_radius_km), body.rotation_angle(t));
            } else if constexpr (std::is_same_v<K, WalkerParams>) {
                return walker_position(k, body.body_radius_km, body.mu_km3_s2, index, t);
            } else {
                const auto& props = propagators_[static_cast<std::size_t>(&c - constellations_.data())];
                return props[index].position(k.scenario_epoch_jd, t);
            }
        },
        c.kind);
}

Vec3 MobilityModel::node_position(NodeId node, SimTime t) const {
    const ConstellationId cid = constellation_of(node);
    const auto& c = constellations_[cid];
    return center_position(c.center, t) + relative_position(c, nodes_[node].index, t);
}

void MobilityModel::fill_constellation(const Constellation& c, SimTime t, const Vec3& origin,
                                       std::vector<Vec3>& out) const {
    if (const auto* w = std::get_if<WalkerParams>(&c.kind)) {
        const auto& body = centers_[c.center];
        const auto rel = walker_positions(*w, body.body_radius_km, body.mu_km3_s2, t);
        for (std::size_t i = 0; i < rel.size(); ++i) out[c.nodes[i]] = origin + rel[i];
        return;
    }
    for (std::uint32_t i = 0; i < c.nodes.size(); ++i) out[c.nodes[i]] = origin + relative_position(c, i, t);
}

std::vector<Vec3> MobilityModel::positions(SimTime t) const {
    std::vector<Vec3> out(nodes_.size());
    std::vector<Vec3> origins(centers_.size());
    for (CenterId id = 0; id < centers_.size(); ++id) origins[id] = center_position(id, t);
    for (const auto& c : constellations_) fill_constellation(c, t, origins[c.center], out);
    return out;
}

}  // namespace spacenet
