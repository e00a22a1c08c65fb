#pragma once

namespace spacenet::constants {

inline constexpr double kSpeedOfLightKmS = 299792.458;
inline constexpr double kAuKm = 149597870.7;

inline constexpr double kSunRadiusKm = 695700.0;

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kEarthMuKm3S2 = 398600.4418;
inline constexpr double kEarthSiderealDayS = 86164.0905;
inline constexpr double kEarthOrbitPeriodS = 31558149.8;

inline constexpr double kMoonRadiusKm = 1737.4;
inline constexpr double kMoonMuKm3S2 = 4902.800066;
inline constexpr double kMoonOrbitRadiusKm = 384400.0;
inline constexpr double kMoonOrbitPeriodS = 2360591.5;

inline constexpr double kMarsRadiusKm = 3389.5;
inline constexpr double kMarsMuKm3S2 = 42828.37;
inline constexpr double kMarsSiderealDayS = 88642.66;
inline constexpr double kMarsOrbitRadiusAu = 1.523679;
inline constexpr double kMarsOrbitPeriodS = 59354668.8;

// 2025-06-27T00:00:00Z
inline constexpr double kDefaultEpochJd = 2460853.5;

}  // namespace spacenet::constants
