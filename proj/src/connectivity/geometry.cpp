#include "spacenet/connectivity/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spacenet/mobility/constants.hpp"

namespace spacenet {

bool los_clear(const Vec3& p1, const Vec3& p2, const Vec3& center, double radius_km) {
    const Vec3 a = p1 - center;
    const Vec3 b = p2 - center;
    if (a.norm() <= radius_km || b.norm() <= radius_km) return true;
    const Vec3 d = b - a;
    const double len2 = d.dot(d);
    double s = 0.0;
    if (len2 > 0.0) s = std::clamp(-a.dot(d) / len2, 0.0, 1.0);
    const Vec3 closest = a + s * d;
    return closest.norm() > radius_km;
}

double elevation_angle(const Vec3& gs_pos, const Vec3& sat_pos, const Vec3& body_center) {
    const Vec3 up = (gs_pos - body_center).unit();
    const Vec3 los = sat_pos - gs_pos;
    return std::atan2(up.dot(los), up.cross(los).norm()) * 180.0 / std::numbers::pi;
}

double propagation_delay_s(const Vec3& a, const Vec3& b) { return distance(a, b) / constants::kSpeedOfLightKmS; }

}  // namespace spacenet
