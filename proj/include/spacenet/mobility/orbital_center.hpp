#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "spacenet/core/types.hpp"
#include "spacenet/mobility/vec3.hpp"

namespace spacenet {

using CenterId = std::uint32_t;

struct StaticOffset {
    Vec3 offset;
};

// Circular orbit about the parent. Phase is the argument of latitude at t = 0.
struct CircularOrbit {
    double radius_km = 0.0;
    double period_s = 0.0;
    double inclination_deg = 0.0;
    double raan_deg = 0.0;
    double phase_deg = 0.0;

    Vec3 position(SimTime t) const;
};

using Trajectory = std::variant<StaticOffset, CircularOrbit>;

Vec3 trajectory_position(const Trajectory& trajectory, SimTime t);

// Position on a circular orbit from RAAN, inclination and argument of latitude (radians).
Vec3 circular_position(double radius_km, double raan, double inclination, double arg_latitude);

double circular_period(double radius_km, double mu_km3_s2);

struct OrbitalCenter {
    std::string name;
    std::optional<CenterId> parent;
    Trajectory trajectory = StaticOffset{};
    double body_radius_km = 0.0;
    double rotation_period_s = 0.0;  // 0: the body does not rotate
    double rotation_phase_rad = 0.0;
    double mu_km3_s2 = 0.0;

    double rotation_angle(SimTime t) const;
};

}  // namespace spacenet
