#pragma once

#include "spacenet/mobility/vec3.hpp"

namespace spacenet {

// True iff segment p1-p2 stays farther than radius_km from center, or either endpoint lies within the radius.
bool los_clear(const Vec3& p1, const Vec3& p2, const Vec3& center, double radius_km);

// Elevation (degrees) of sat_pos above the local horizon at gs_pos on a body centered at body_center.
double elevation_angle(const Vec3& gs_pos, const Vec3& sat_pos, const Vec3& body_center);

double propagation_delay_s(const Vec3& a, const Vec3& b);

}  // namespace spacenet
