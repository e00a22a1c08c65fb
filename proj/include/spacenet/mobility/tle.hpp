#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "spacenet/core/types.hpp"
#include "spacenet/mobility/vec3.hpp"

namespace spacenet {

struct TleRecord {
    std::string name;
    std::string line1;
    std::string line2;

    std::string satnum;
    double epoch_jd = 0.0;  // full Julian date of the element epoch
    double bstar = 0.0;
    double ndot = 0.0;   // rad/min^2
    double nddot = 0.0;  // rad/min^3
    double inclination_rad = 0.0;
    double raan_rad = 0.0;
    double eccentricity = 0.0;
    double arg_perigee_rad = 0.0;
    double mean_anomaly_rad = 0.0;
    double mean_motion_rad_min = 0.0;
    double mean_motion_rev_day = 0.0;

    // Parses the element columns; the checksum is validated unless disabled.
    static TleRecord parse(std::string name, std::string_view line1, std::string_view line2,
                           bool verify_checksum = true);
};

int tle_checksum(std::string_view line);
bool tle_checksum_ok(std::string_view line);

// Reads name/line1/line2 triples; lines starting with '#' and blank lines are skipped.
std::vector<TleRecord> read_tle_file(const std::filesystem::path& path);
std::vector<TleRecord> parse_tle_text(std::string_view text);

double julian_date(int year, int month, int day, int hour, int minute, double second);
double gmst_rad(double jd_ut1);

// Wraps an initialized SGP4 satellite record; propagation is a pure function of time.
class Sgp4Propagator {
public:
    explicit Sgp4Propagator(const TleRecord& tle);
    Sgp4Propagator(const Sgp4Propagator& other);
    Sgp4Propagator& operator=(const Sgp4Propagator& other);
    Sgp4Propagator(Sgp4Propagator&&) noexcept;
    Sgp4Propagator& operator=(Sgp4Propagator&&) noexcept;
    ~Sgp4Propagator();

    // TEME position (km) and velocity (km/s) at minutes since the element epoch.
    void state_at_minutes(double tsince_min, Vec3& r, Vec3& v) const;
    Vec3 position_at_minutes(double tsince_min) const;

    // Position at simulation time t for a scenario whose t = 0 is scenario_epoch_jd.
    Vec3 position(double scenario_epoch_jd, SimTime t) const;

    double epoch_jd() const { return epoch_jd_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    double epoch_jd_ = 0.0;
};

}  // namespace spacenet
