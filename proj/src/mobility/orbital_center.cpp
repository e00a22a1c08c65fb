#include "spacenet/mobility/orbital_center.hpp"

#include <cmath>
#include <numbers>

namespace spacenet {

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

Vec3 circular_position(double radius_km, double raan, double inclination, double arg_latitude) {
    const double cu = std::cos(arg_latitude);
    const double su = std::sin(arg_latitude);
    const double co = std::cos(raan);
    const double so = std::sin(raan);
    const double ci = std::cos(inclination);
    const double si = std::sin(inclination);
    return {radius_km * (co * cu - so * su * ci), radius_km * (so * cu + co * su * ci), radius_km * su * si};
}

double circular_period(double radius_km, double mu_km3_s2) {
    return 2.0 * std::numbers::pi * std::sqrt(radius_km * radius_km * radius_km / mu_km3_s2);
}

Vec3 CircularOrbit::position(SimTime t) const {
    const double u = phase_deg * kDeg + (period_s > 0.0 ? 2.0 * std::numbers::pi * t / period_s : 0.0);
    return circular_position(radius_km, raan_deg * kDeg, inclination_deg * kDeg, u);
}

Vec3 trajectory_position(const Trajectory& trajectory, SimTime t) {
    if (const auto* s = std::get_if<StaticOffset>(&trajectory)) return s->offset;
    return std::get<CircularOrbit>(trajectory).position(t);
}

double OrbitalCenter::rotation_angle(SimTime t) const {
    if (rotation_period_s <= 0.0) return rotation_phase_rad;
    return rotation_phase_rad + 2.0 * std::numbers::pi * t / rotation_period_s;
}

}  // namespace spacenet
