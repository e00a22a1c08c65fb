#include "spacenet/mobility/constellation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spacenet/core/errors.hpp"

namespace spacenet {

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

void WalkerParams::validate() const {
    if (total_sats <= 0 || planes <= 0) throw InvalidWalkerParams("walker: t and p must be positive");
    if (total_sats % planes != 0) {
        throw InvalidWalkerParams("walker: p=" + std::to_string(planes) + " does not divide t=" +
                                  std::to_string(total_sats));
    }
    if (phasing < 0 || (phasing >= planes && !(planes == 1 && phasing == 0))) {
        throw InvalidWalkerParams("walker: phasing must satisfy 0 <= f < p");
    }
    if (!(altitude_km > 0.0)) throw InvalidWalkerParams("walker: altitude must be positive");
}

Vec3 walker_position(const WalkerParams& params, double body_radius_km, double mu_km3_s2, std::uint32_t index,
                     SimTime t) {
    const double r = body_radius_km + params.altitude_km;
    const double n = std::sqrt(mu_km3_s2 / (r * r * r));
    const int per_plane = params.sats_per_plane();
    const int plane = static_cast<int>(index) / per_plane;
    const int slot = static_cast<int>(index) % per_plane;
    const double raan = (params.raan_offset_deg + plane * params.raan_spread_deg / params.planes) * kDeg;
    const double u_deg = slot * 360.0 / per_plane + plane * params.phasing * 360.0 / params.total_sats;
    return circular_position(r, raan, params.inclination_deg * kDeg, u_deg * kDeg + n * t);
}

std::vector<Vec3> walker_positions(const WalkerParams& params, double body_radius_km, double mu_km3_s2,
                                   SimTime t) {
    params.validate();
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(params.total_sats));
    for (int i = 0; i < params.total_sats; ++i) {
        out.push_back(walker_position(params, body_radius_km, mu_km3_s2, static_cast<std::uint32_t>(i), t));
    }
    return out;
}

Vec3 geodetic_to_body(const GeoSite& site, double body_radius_km) {
    const double lat = site.latitude_deg * kDeg;
    const double lon = site.longitude_deg * kDeg;
    const double r = body_radius_km + site.altitude_km;
    return {r * std::cos(lat) * std::cos(lon), r * std::cos(lat) * std::sin(lon), r * std::sin(lat)};
}

}  // namespace spacenet
