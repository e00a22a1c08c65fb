#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "spacenet/core/types.hpp"
#include "spacenet/mobility/orbital_center.hpp"
#include "spacenet/mobility/tle.hpp"
#include "spacenet/mobility/vec3.hpp"

namespace spacenet {

using ConstellationId = std::uint32_t;

struct FixedPoints {
    std::vector<Vec3> points;  // relative to the center, non-rotating
};

struct GeoSite {
    std::string name;
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double altitude_km = 0.0;
};

// Sites on the center's body surface, carried by its rotation.
struct GroundStations {
    std::vector<GeoSite> sites;
};

struct WalkerParams {
    int total_sats = 66;
    int planes = 6;
    int phasing = 1;
    double inclination_deg = 86.4;
    double altitude_km = 781.0;
    double raan_offset_deg = 0.0;
    double raan_spread_deg = 360.0;  // 180 gives a Walker star

    void validate() const;
    int sats_per_plane() const { return total_sats / planes; }
};

struct TleSet {
    std::vector<TleRecord> records;
    double scenario_epoch_jd = 0.0;
};

using ConstellationKind = std::variant<FixedPoints, GroundStations, WalkerParams, TleSet>;

struct Constellation {
    std::string name;
    CenterId center = 0;
    ConstellationKind kind;
    std::vector<NodeId> nodes;
    std::vector<std::string> node_names;
};

Vec3 walker_position(const WalkerParams& params, double body_radius_km, double mu_km3_s2, std::uint32_t index,
                     SimTime t);

// Center-relative Walker positions, satellite index = plane * (t/p) + slot.
std::vector<Vec3> walker_positions(const WalkerParams& params, double body_radius_km, double mu_km3_s2,
                                   SimTime t);

Vec3 geodetic_to_body(const GeoSite& site, double body_radius_km);

}  // namespace spacenet
