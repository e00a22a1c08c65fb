#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spacenet/core/types.hpp"
#include "spacenet/mobility/constellation.hpp"
#include "spacenet/mobility/orbital_center.hpp"
#include "spacenet/mobility/vec3.hpp"

namespace spacenet {

// Hierarchy of orbital centers and the constellations that ride on them.
class MobilityModel {
public:
    CenterId add_center(OrbitalCenter center);
    ConstellationId add_constellation(std::string name, CenterId center, ConstellationKind kind);

    std::size_t center_count() const { return centers_.size(); }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t constellation_count() const { return constellations_.size(); }

    const OrbitalCenter& center(CenterId id) const;
    const Constellation& constellation(ConstellationId id) const;
    std::optional<CenterId> find_center(const std::string& name) const;
    std::optional<ConstellationId> find_constellation(const std::string& name) const;
    std::optional<NodeId> find_node(const std::string& name) const;

    ConstellationId constellation_of(NodeId node) const;
    CenterId center_of(NodeId node) const;
    const std::string& node_name(NodeId node) const;
    bool is_ground_station(NodeId node) const;

    Vec3 center_position(CenterId id, SimTime t) const;
    Vec3 node_position(NodeId node, SimTime t) const;
    std::vector<Vec3> positions(SimTime t) const;

private:
    struct NodeRef {
        ConstellationId constellation;
        std::uint32_t index;
    };

    Vec3 relative_position(const Constellation& c, std::uint32_t index, SimTime t) const;
    void fill_constellation(const Constellation& c, SimTime t, const Vec3& origin, std::vector<Vec3>& out) const;

    std::vector<OrbitalCenter> centers_;
    std::vector<Constellation> constellations_;
    std::vector<std::vector<Sgp4Propagator>> propagators_;  // per constellation, TLE sets only
    std::vector<NodeRef> nodes_;
};

}  // namespace spacenet
