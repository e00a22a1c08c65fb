#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "spacenet/core/errors.hpp"
#include "spacenet/mobility/constants.hpp"
#include "spacenet/mobility/mobility_model.hpp"

using namespace spacenet;
namespace k = spacenet::constants;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

OrbitalCenter earth_at_origin() {
    OrbitalCenter c;
    c.name = "Earth";
    c.body_radius_km = k::kEarthRadiusKm;
    c.mu_km3_s2 = k::kEarthMuKm3S2;
    c.rotation_period_s = k::kEarthSiderealDayS;
    return c;
}

double angle_between(const Vec3& a, const Vec3& b) {
    return std::acos(std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0));
}

// Argument of latitude of p on an orbit with the given RAAN and inclination (radians).
double arg_latitude(const Vec3& p, double raan, double incl) {
    const Vec3 node{std::cos(raan), std::sin(raan), 0.0};
    const Vec3 normal{std::sin(incl) * std::sin(raan), -std::sin(incl) * std::cos(raan), std::cos(incl)};
    const Vec3 in_plane = normal.cross(node);
    return std::atan2(p.dot(in_plane), p.dot(node));
}

double wrap(double a) {
    a = std::fmod(a, 2.0 * std::numbers::pi);
    return a < 0.0 ? a + 2.0 * std::numbers::pi : a;
}

}  // namespace

TEST(Walker, ShellPreservesRadius) {
    const WalkerParams p{66, 6, 1, 86.4, 781.0};
    for (const double t : {0.0, 17.3, 1234.5, 86400.0, 1e6}) {
        for (const auto& pos : walker_positions(p, k::kEarthRadiusKm, k::kEarthMuKm3S2, t)) {
            EXPECT_LT(std::abs(pos.norm() - (k::kEarthRadiusKm + 781.0)), 1e-6);
        }
    }
}

TEST(Walker, PositionsRepeatAfterOnePeriod) {
    const WalkerParams p{24, 3, 1, 55.0, 1200.0};
    const double r = k::kEarthRadiusKm + 1200.0;
    const double period = 2.0 * std::numbers::pi * std::sqrt(r * r * r / k::kEarthMuKm3S2);
    const auto a = walker_positions(p, k::kEarthRadiusKm, k::kEarthMuKm3S2, 100.0);
    const auto b = walker_positions(p, k::kEarthRadiusKm, k::kEarthMuKm3S2, 100.0 + period);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LT(distance(a[i], b[i]), 1e-6);
}

TEST(Walker, PlanesSlotsAndPhasingFollowTheDeltaPattern) {
    for (const auto& p : {WalkerParams{66, 6, 1, 86.4, 781.0}, WalkerParams{24, 3, 2, 55.0, 1000.0},
                          WalkerParams{12, 4, 3, 70.0, 600.0, 15.0, 180.0}}) {
        const int s = p.sats_per_plane();
        const auto pos = walker_positions(p, k::kEarthRadiusKm, k::kEarthMuKm3S2, 0.0);
        for (int plane = 0; plane < p.planes; ++plane) {
            const double raan = (p.raan_offset_deg + plane * p.raan_spread_deg / p.planes) * kDeg;
            const double incl = p.inclination_deg * kDeg;
            const Vec3 normal{std::sin(incl) * std::sin(raan), -std::sin(incl) * std::cos(raan), std::cos(incl)};
            for (int slot = 0; slot < s; ++slot) {
                const Vec3& x = pos[static_cast<std::size_t>(plane * s + slot)];
                EXPECT_NEAR(x.dot(normal) / x.norm(), 0.0, 1e-12);
                const double expected_u = (slot * 360.0 / s + plane * p.phasing * 360.0 / p.total_sats) * kDeg;
                const double diff = wrap(arg_latitude(x, raan, incl) - expected_u);
                EXPECT_LT(std::min(diff, 2.0 * std::numbers::pi - diff), 1e-9);
            }
        }
    }
}

TEST(Walker, ValidatesParameters) {
    EXPECT_THROW((WalkerParams{66, 7, 1, 86.4, 781.0}.validate()), InvalidWalkerParams);
    EXPECT_THROW((WalkerParams{0, 1, 0, 86.4, 781.0}.validate()), InvalidWalkerParams);
    EXPECT_THROW((WalkerParams{66, 6, 6, 86.4, 781.0}.validate()), InvalidWalkerParams);
    EXPECT_THROW((WalkerParams{66, 6, 1, 86.4, -5.0}.validate()), InvalidWalkerParams);
    EXPECT_NO_THROW((WalkerParams{1, 1, 0, 98.0, 700.0}.validate()));
    MobilityModel m;
    const auto c = m.add_center(earth_at_origin());
    EXPECT_THROW(m.add_constellation("bad", c, WalkerParams{10, 3, 1, 50.0, 500.0}), InvalidWalkerParams);
}

TEST(CircularOrbit, MatchesKeplerPeriod) {
    const double r = 42164.0;
    const double period = circular_period(r, k::kEarthMuKm3S2);
    EXPECT_NEAR(period, 86164.0, 5.0);  // geostationary radius gives one sidereal day
    const CircularOrbit o{r, period, 0.0, 0.0, 0.0};
    EXPECT_LT(distance(o.position(0.0), Vec3{r, 0.0, 0.0}), 1e-6);
    EXPECT_LT(distance(o.position(period / 4.0), Vec3{0.0, r, 0.0}), 1e-6);
}

TEST(MobilityModel, FrameCompositionIsIndependentOfCenterTrajectory) {
    const WalkerParams walker{8, 2, 1, 60.0, 500.0};
    auto build = [&](Trajectory traj) {
        MobilityModel m;
        OrbitalCenter sun;
        sun.name = "Sun";
        const auto root = m.add_center(sun);
        OrbitalCenter body = earth_at_origin();
        body.parent = root;
        body.trajectory = traj;
        const auto c = m.add_center(body);
        m.add_constellation("w", c, walker);
        return m;
    };
    const MobilityModel fixed = build(StaticOffset{{0.0, 0.0, 0.0}});
    const MobilityModel moving = build(CircularOrbit{k::kAuKm, k::kEarthOrbitPeriodS, 7.0, 20.0, 33.0});
    for (const double t : {0.0, 500.0, 9000.0}) {
        for (NodeId n = 0; n < 8; ++n) {
            const Vec3 rel_fixed = fixed.node_position(n, t) - fixed.center_position(1, t);
            const Vec3 rel_moving = moving.node_position(n, t) - moving.center_position(1, t);
            EXPECT_LT(distance(rel_fixed, rel_moving), 1e-6);
        }
    }
}

TEST(MobilityModel, ThreeLevelHierarchyComposesAnalytically) {
    MobilityModel m;
    OrbitalCenter sun;
    sun.name = "Sun";
    const auto s = m.add_center(sun);
    OrbitalCenter mars;
    mars.name = "Mars";
    mars.parent = s;
    const CircularOrbit mars_orbit{k::kMarsOrbitRadiusAu * k::kAuKm, k::kMarsOrbitPeriodS, 1.85, 49.6, 10.0};
    mars.trajectory = mars_orbit;
    mars.body_radius_km = k::kMarsRadiusKm;
    mars.mu_km3_s2 = k::kMarsMuKm3S2;
    const auto mc = m.add_center(mars);
    OrbitalCenter phobos;
    phobos.name = "Phobos";
    phobos.parent = mc;
    const CircularOrbit phobos_orbit{9376.0, 27553.8, 1.1, 0.0, 45.0};
    phobos.trajectory = phobos_orbit;
    const auto pc = m.add_center(phobos);
    const CircularOrbit probe_orbit{50.0, 3000.0, 90.0, 0.0, 0.0};
    m.add_constellation("probe", pc, FixedPoints{{{0.0, 0.0, 0.0}}});
    const WalkerParams relay{1, 1, 0, 30.0, 6000.0};
    m.add_constellation("relay", mc, relay);

    for (const double t : {0.0, 3600.0, 1e6}) {
        const Vec3 expected_probe = mars_orbit.position(t) + phobos_orbit.position(t);
        EXPECT_LT(distance(m.node_position(0, t), expected_probe), 1e-6);
        const double r = k::kMarsRadiusKm + 6000.0;
        const double n = std::sqrt(k::kMarsMuKm3S2 / (r * r * r));
        const Vec3 expected_relay = mars_orbit.position(t) + circular_position(r, 0.0, 30.0 * kDeg, n * t);
        EXPECT_LT(distance(m.node_position(1, t), expected_relay), 1e-6);
    }
    (void)probe_orbit;
}

TEST(MobilityModel, PositionsArePureFunctionsOfTime) {
    MobilityModel m;
    const auto c = m.add_center(earth_at_origin());
    m.add_constellation("w", c, WalkerParams{12, 3, 1, 53.0, 550.0});
    m.add_constellation("gs", c, GroundStations{{{"A", 10.0, 20.0, 0.0}, {"B", -33.0, 151.0, 0.1}}});
    const std::vector<double> times{5000.0, 0.0, 123.0, 5000.0, 77.7, 0.0};
    std::vector<std::vector<Vec3>> first;
    for (const double t : times) first.push_back(m.positions(t));
    for (std::size_t i = times.size(); i-- > 0;) {
        const auto again = m.positions(times[i]);
        for (std::size_t n = 0; n < again.size(); ++n) {
            EXPECT_EQ(again[n], first[i][n]);
            EXPECT_EQ(m.node_position(static_cast<NodeId>(n), times[i]), first[i][n]);
        }
    }
}

TEST(GroundStations, RotateWithTheirBody) {
    MobilityModel m;
    const auto c = m.add_center(earth_at_origin());
    m.add_constellation("gs", c, GroundStations{{{"Pole", 90.0, 0.0, 0.0}, {"Equator", 0.0, 0.0, 0.0}}});
    EXPECT_LT(distance(m.node_position(0, 0.0), {0.0, 0.0, k::kEarthRadiusKm}), 1e-9);
    EXPECT_LT(distance(m.node_position(0, 40000.0), {0.0, 0.0, k::kEarthRadiusKm}), 1e-6);
    EXPECT_LT(distance(m.node_position(1, 0.0), {k::kEarthRadiusKm, 0.0, 0.0}), 1e-9);
    EXPECT_LT(distance(m.node_position(1, k::kEarthSiderealDayS / 4.0), {0.0, k::kEarthRadiusKm, 0.0}), 1e-6);
    EXPECT_LT(distance(m.node_position(1, k::kEarthSiderealDayS), {k::kEarthRadiusKm, 0.0, 0.0}), 1e-6);
    EXPECT_TRUE(m.is_ground_station(0));
    EXPECT_EQ(m.find_node("Equator"), std::optional<NodeId>(1));
    EXPECT_EQ(m.node_name(0), "Pole");
}

TEST(MobilityModel, UnknownIdsThrow) {
    MobilityModel m;
    EXPECT_THROW(m.add_constellation("w", 3, WalkerParams{}), UnknownCenter);
    m.add_center(earth_at_origin());
    EXPECT_THROW(m.node_position(0, 0.0), UnknownNode);
    EXPECT_FALSE(m.find_node("nobody").has_value());
}

TEST(Time, JulianDateAndSiderealTime) {
    EXPECT_DOUBLE_EQ(julian_date(2000, 1, 1, 12, 0, 0.0), 2451545.0);
    EXPECT_NEAR(julian_date(2025, 6, 27, 0, 0, 0.0), k::kDefaultEpochJd, 1e-9);
    // IAU 1982 GMST at the J2000 epoch: 280.46061837 deg.
    EXPECT_NEAR(gmst_rad(2451545.0), 280.46061837 * kDeg, 1e-8);
}

TEST(Tle, ParsesElementColumns) {
    const char* l1 = "1 25544U 98067A   08264.51782528 -.00002182  00000-0 -11606-4 0  2927";
    const char* l2 = "2 25544  51.6416 247.4627 0006703 130.5360 325.0288 15.72125391563537";
    const auto t = TleRecord::parse("ISS (ZARYA)", l1, l2);
    EXPECT_EQ(t.satnum, "25544");
    EXPECT_EQ(t.name, "ISS (ZARYA)");
    EXPECT_NEAR(t.inclination_rad, 51.6416 * kDeg, 1e-12);
    EXPECT_NEAR(t.raan_rad, 247.4627 * kDeg, 1e-12);
    EXPECT_NEAR(t.eccentricity, 0.0006703, 1e-12);
    EXPECT_NEAR(t.mean_motion_rev_day, 15.72125391, 1e-9);
    EXPECT_NEAR(t.bstar, -0.11606e-4, 1e-15);
    EXPECT_NEAR(t.epoch_jd, julian_date(2008, 1, 1, 0, 0, 0.0) + 263.51782528, 1e-8);
    EXPECT_TRUE(tle_checksum_ok(l1));
    EXPECT_TRUE(tle_checksum_ok(l2));
}

TEST(Tle, RejectsBadInput) {
    const std::string l1 = "1 25544U 98067A   08264.51782528 -.00002182  00000-0 -11606-4 0  2927";
    const std::string l2 = "2 25544  51.6416 247.4627 0006703 130.5360 325.0288 15.72125391563537";
    std::string broken = l2;
    broken[68] = '0';
    EXPECT_THROW(TleRecord::parse("x", l1, broken), TleParseError);
    EXPECT_NO_THROW(TleRecord::parse("x", l1, broken, false));
    EXPECT_THROW(TleRecord::parse("x", l1.substr(0, 40), l2), TleParseError);
    EXPECT_THROW(TleRecord::parse("x", l2, l1), TleParseError);
    EXPECT_THROW(parse_tle_text("ONLY A NAME\n" + l1 + "\n"), TleParseError);
}

TEST(Tle, ReadsNamedTriplesAndSkipsComments) {
    const std::string text =
        "# snapshot\n\nISS (ZARYA)\n"
        "1 25544U 98067A   08264.51782528 -.00002182  00000-0 -11606-4 0  2927\n"
        "2 25544  51.6416 247.4627 0006703 130.5360 325.0288 15.72125391563537\n";
    const auto recs = parse_tle_text(text);
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].name, "ISS (ZARYA)");
}

TEST(Tle, BundledCubesatSnapshotParses) {
    const auto recs = read_tle_file(std::string(SPACENET_TEST_DATA) + "/../../data/cubesats.tle");
    EXPECT_GE(recs.size(), 90u);
    for (const auto& r : recs) {
        const Sgp4Propagator p(r);
        const double alt = p.position_at_minutes(0.0).norm() - k::kEarthRadiusKm;
        EXPECT_GT(alt, 300.0);
        EXPECT_LT(alt, 700.0);
    }
}

TEST(Sgp4, ReproducesVerificationVectors) {
    const auto check = spacenet::testing::check_sgp4_vectors(std::string(SPACENET_TEST_DATA) + "/SGP4-VER.TLE",
                                                              std::string(SPACENET_TEST_DATA) + "/tcppver.out");
    EXPECT_TRUE(check.failures.empty()) << check.failures.front();
    EXPECT_GE(check.satellites, 30u);
    EXPECT_GE(check.points, 500u);
    EXPECT_LT(check.max_error_km, 1e-3) << "worst at " << check.worst;
    // Perturbed eccentricity leaves [0, 1] at epoch; the reference rejects it too.
    EXPECT_EQ(check.init_errors, std::vector<std::string>{"33334"});
}

TEST(Sgp4, PropagationIsPure) {
    const auto t = TleRecord::parse("ISS", "1 25544U 98067A   08264.51782528 -.00002182  00000-0 -11606-4 0  2927",
                                    "2 25544  51.6416 247.4627 0006703 130.5360 325.0288 15.72125391563537");
    const Sgp4Propagator p(t);
    const Sgp4Propagator copy = p;
    const Vec3 a = p.position_at_minutes(100.0);
    p.position_at_minutes(5000.0);
    EXPECT_EQ(p.position_at_minutes(100.0), a);
    EXPECT_EQ(copy.position_at_minutes(100.0), a);
    // Scenario time is measured from the scenario epoch, not the element epoch.
    EXPECT_LT(distance(p.position(t.epoch_jd - 1.0, 86400.0 + 6000.0), a), 1e-6);
}
