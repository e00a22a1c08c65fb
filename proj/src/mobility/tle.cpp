#include "spacenet/mobility/tle.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "SGP4.h"
#include "spacenet/core/errors.hpp"

namespace spacenet {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kMinutesPerDay = 1440.0;
constexpr double kSgp4EpochOffsetJd = 2433281.5;

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double field(std::string_view line, std::size_t first_col, std::size_t last_col, const char* what) {
    // 1-based inclusive columns
    if (line.size() < last_col) throw TleParseError(std::string("TLE line too short for ") + what);
    const std::string text = trim(line.substr(first_col - 1, last_col - first_col + 1));
    if (text.empty()) return 0.0;
    double value = 0.0;
    const char* begin = text.data();
    if (*begin == '+') ++begin;
    const auto res = std::from_chars(begin, text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw TleParseError(std::string("bad TLE field ") + what + ": '" + text + "'");
    }
    return value;
}

// Fields like " 12345-3" meaning 0.12345e-3.
double implied_exponent(std::string_view line, std::size_t first_col, const char* what) {
    if (line.size() < first_col + 7) throw TleParseError(std::string("TLE line too short for ") + what);
    const std::string_view raw = line.substr(first_col - 1, 8);
    const double sign = raw[0] == '-' ? -1.0 : 1.0;
    const std::string mantissa = trim(raw.substr(1, 5));
    const std::string exponent = trim(raw.substr(6, 2));
    if (mantissa.empty()) return 0.0;
    double m = 0.0;
    int e = 0;
    const auto r1 = std::from_chars(mantissa.data(), mantissa.data() + mantissa.size(), m);
    const char* ebeg = exponent.data();
    if (!exponent.empty() && *ebeg == '+') ++ebeg;
    const auto r2 = std::from_chars(ebeg, exponent.data() + exponent.size(), e);
    if (r1.ec != std::errc{} || (!exponent.empty() && r2.ec != std::errc{})) {
        throw TleParseError(std::string("bad TLE field ") + what + ": '" + std::string(raw) + "'");
    }
    return sign * m * 1e-5 * std::pow(10.0, e);
}

}  // namespace

int tle_checksum(std::string_view line) {
    int sum = 0;
    for (std::size_t i = 0; i < 68 && i < line.size(); ++i) {
        const char c = line[i];
        if (c >= '0' && c <= '9') sum += c - '0';
        if (c == '-') sum += 1;
    }
    return sum % 10;
}

bool tle_checksum_ok(std::string_view line) {
    if (line.size() < 69) return false;
    const char c = line[68];
    return c >= '0' && c <= '9' && (c - '0') == tle_checksum(line);
}

double julian_date(int year, int month, int day, int hour, int minute, double second) {
    double jd = 0.0;
    double frac = 0.0;
    SGP4Funcs::jday_SGP4(year, month, day, hour, minute, second, jd, frac);
    return jd + frac;
}

double gmst_rad(double jd_ut1) { return SGP4Funcs::gstime_SGP4(jd_ut1); }

TleRecord TleRecord::parse(std::string name, std::string_view line1, std::string_view line2,
                           bool verify_checksum) {
    while (!line1.empty() && (line1.back() == '\r' || line1.back() == '\n')) line1.remove_suffix(1);
    while (!line2.empty() && (line2.back() == '\r' || line2.back() == '\n')) line2.remove_suffix(1);
    if (line1.size() < 68 || line2.size() < 68) throw TleParseError("TLE lines must have at least 68 columns");
    if (line1[0] != '1' || line2[0] != '2') throw TleParseError("TLE line numbers must be 1 and 2");
    if (verify_checksum && (!tle_checksum_ok(line1) || !tle_checksum_ok(line2))) {
        throw TleParseError("TLE checksum mismatch for '" + trim(name) + "'");
    }

    TleRecord rec;
    rec.name = trim(name);
    rec.line1 = std::string(line1);
    rec.line2 = std::string(line2);
    rec.satnum = trim(line1.substr(2, 5));
    if (trim(line2.substr(2, 5)) != rec.satnum) throw TleParseError("TLE satellite numbers differ between lines");

    const int two_digit_year = static_cast<int>(field(line1, 19, 20, "epoch year"));
    const double epoch_days = field(line1, 21, 32, "epoch day");
    const int year = two_digit_year < 57 ? 2000 + two_digit_year : 1900 + two_digit_year;
    int mon = 0;
    int day = 0;
    int hr = 0;
    int minute = 0;
    double sec = 0.0;
    SGP4Funcs::days2mdhms_SGP4(year, epoch_days, mon, day, hr, minute, sec);
    rec.epoch_jd = julian_date(year, mon, day, hr, minute, sec);

    const double xpdotp = kMinutesPerDay / (2.0 * std::numbers::pi);
    rec.ndot = field(line1, 34, 43, "ndot") / (xpdotp * kMinutesPerDay);
    rec.nddot = implied_exponent(line1, 45, "nddot") / (xpdotp * kMinutesPerDay * kMinutesPerDay);
    rec.bstar = implied_exponent(line1, 54, "bstar");

    rec.inclination_rad = field(line2, 9, 16, "inclination") * kDeg;
    rec.raan_rad = field(line2, 18, 25, "raan") * kDeg;
    rec.eccentricity = field(line2, 27, 33, "eccentricity") * 1e-7;
    rec.arg_perigee_rad = field(line2, 35, 42, "argument of perigee") * kDeg;
    rec.mean_anomaly_rad = field(line2, 44, 51, "mean anomaly") * kDeg;
    rec.mean_motion_rev_day = field(line2, 53, 63, "mean motion");
    rec.mean_motion_rad_min = rec.mean_motion_rev_day / xpdotp;
    if (!(rec.mean_motion_rev_day > 0.0)) throw TleParseError("TLE mean motion must be positive");
    return rec;
}

std::vector<TleRecord> parse_tle_text(std::string_view text) {
    std::vector<std::string> lines;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        lines.push_back(line);
    }
    std::vector<TleRecord> out;
    std::size_t i = 0;
    while (i < lines.size()) {
        std::string name;
        if (lines[i][0] != '1') name = lines[i++];
        if (i + 1 >= lines.size()) throw TleParseError("truncated TLE set after '" + trim(name) + "'");
        out.push_back(TleRecord::parse(name, lines[i], lines[i + 1]));
        i += 2;
    }
    return out;
}

std::vector<TleRecord> read_tle_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw TleParseError("cannot open TLE file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tle_text(buf.str());
}

struct Sgp4Propagator::Impl {
    elsetrec satrec{};
};

Sgp4Propagator::Sgp4Propagator(const TleRecord& tle) : impl_(std::make_unique<Impl>()), epoch_jd_(tle.epoch_jd) {
    char satn[9] = {};
    tle.satnum.copy(satn, 8);
    const bool ok = SGP4Funcs::sgp4init(wgs72, 'i', satn, tle.epoch_jd - kSgp4EpochOffsetJd, tle.bstar, tle.ndot,
                                        tle.nddot, tle.eccentricity, tle.arg_perigee_rad, tle.inclination_rad,
                                        tle.mean_anomaly_rad, tle.mean_motion_rad_min, tle.raan_rad, impl_->satrec);
    if (!ok || impl_->satrec.error != 0) {
        throw PropagationError("SGP4 init failed for " + tle.satnum + " (code " +
                               std::to_string(impl_->satrec.error) + ")");
    }
}

Sgp4Propagator::Sgp4Propagator(const Sgp4Propagator& other)
    : impl_(std::make_unique<Impl>(*other.impl_)), epoch_jd_(other.epoch_jd_) {}

Sgp4Propagator& Sgp4Propagator::operator=(const Sgp4Propagator& other) {
    if (this != &other) {
        impl_ = std::make_unique<Impl>(*other.impl_);
        epoch_jd_ = other.epoch_jd_;
    }
    return *this;
}

Sgp4Propagator::Sgp4Propagator(Sgp4Propagator&&) noexcept = default;
Sgp4Propagator& Sgp4Propagator::operator=(Sgp4Propagator&&) noexcept = default;
Sgp4Propagator::~Sgp4Propagator() = default;

void Sgp4Propagator::state_at_minutes(double tsince_min, Vec3& r, Vec3& v) const {
    elsetrec rec = impl_->satrec;
    double rr[3];
    double vv[3];
    const bool ok = SGP4Funcs::sgp4(rec, tsince_min, rr, vv);
    if (!ok || rec.error != 0) {
        throw PropagationError("SGP4 propagation failed at " + std::to_string(tsince_min) + " min (code " +
                               std::to_string(rec.error) + ")");
    }
    r = {rr[0], rr[1], rr[2]};
    v = {vv[0], vv[1], vv[2]};
}

Vec3 Sgp4Propagator::position_at_minutes(double tsince_min) const {
    Vec3 r;
    Vec3 v;
    state_at_minutes(tsince_min, r, v);
    return r;
}

Vec3 Sgp4Propagator::position(double scenario_epoch_jd, SimTime t) const {
    return position_at_minutes((scenario_epoch_jd - epoch_jd_) * kMinutesPerDay + t / 60.0);
}

}  // namespace spacenet
