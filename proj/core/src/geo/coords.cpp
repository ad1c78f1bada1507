#include "dfarm/geo/coords.hpp"

#include "dfarm/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dfarm::geo {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double prime_vertical(double sin_lat) { return Ellipsoid::a / std::sqrt(1.0 - Ellipsoid::e2 * sin_lat * sin_lat); }

}  // namespace

GeodeticCoord normalized(GeodeticCoord g) {
    if (!std::isfinite(g.lat) || !std::isfinite(g.lon) || !std::isfinite(g.alt))
        throw DomainError("geodetic coordinate must be finite");
    if (g.lat < -90.0 || g.lat > 90.0) throw DomainError("latitude must lie in [-90, 90]");
    g.lon = std::fmod(g.lon, 360.0);
    if (g.lon > 180.0) g.lon -= 360.0;
    if (g.lon <= -180.0) g.lon += 360.0;
    return g;
}

EcefCoord geodetic_to_ecef(const GeodeticCoord& input) {
    const GeodeticCoord g = normalized(input);
    const double phi = g.lat * kDeg, lam = g.lon * kDeg;
    const double sp = std::sin(phi), cp = std::cos(phi);
    const double n = prime_vertical(sp);
    return {(n + g.alt) * cp * std::cos(lam), (n + g.alt) * cp * std::sin(lam),
            (n * (1.0 - Ellipsoid::e2) + g.alt) * sp};
}

GeodeticCoord ecef_to_geodetic(const EcefCoord& e) {
    if (!std::isfinite(e.x) || !std::isfinite(e.y) || !std::isfinite(e.z))
        throw DomainError("ECEF coordinate must be finite");
    if (std::sqrt(e.x * e.x + e.y * e.y + e.z * e.z) <= 1.0)
        throw DomainError("ECEF point is within 1 m of the Earth's centre");

    constexpr double a = Ellipsoid::a, b = Ellipsoid::b, e2 = Ellipsoid::e2;
    const double ep2 = e2 / (1.0 - e2);
    const double p = std::hypot(e.x, e.y);
    const double lon = std::atan2(e.y, e.x);

    // Bowring's parametric-latitude start.
    const double theta = std::atan2(e.z * a, p * b);
    const double st = std::sin(theta), ct = std::cos(theta);
    double phi = std::atan2(e.z + ep2 * b * st * st * st, p - e2 * a * ct * ct * ct);

    // Refine tan(phi) = (z + e^2 N sin(phi)) / p; stable at the poles too.
    for (int i = 0; i < 10; ++i) {
        const double n = prime_vertical(std::sin(phi));
        const double next = std::atan2(e.z + e2 * n * std::sin(phi), p);
        const double delta = std::abs(next - phi);
        phi = next;
        if (delta < 1e-12) break;
    }

    const double sp = std::sin(phi), cp = std::cos(phi);
    const double n = prime_vertical(sp);
    // Height from whichever projection is better conditioned.
    const double alt = std::abs(cp) > 0.5 ? p / cp - n : e.z / sp - n * (1.0 - e2);

    GeodeticCoord g{phi / kDeg, lon / kDeg, alt};
    if (g.lon <= -180.0) g.lon += 360.0;
    return g;
}

double geocentric_latitude(double lat) {
    if (std::abs(lat) >= 90.0) return lat;
    return std::atan((1.0 - Ellipsoid::e2) * std::tan(lat * kDeg)) / kDeg;
}

double geodetic_latitude(double lat) {
    if (std::abs(lat) >= 90.0) return lat;
    return std::atan(std::tan(lat * kDeg) / (1.0 - Ellipsoid::e2)) / kDeg;
}

DistanceBearing distance_bearing(const GeodeticCoord& from, const GeodeticCoord& to) {
    const GeodeticCoord p = normalized(from), q = normalized(to);
    const double phi1 = p.lat * kDeg, phi2 = q.lat * kDeg;
    const double dphi = phi2 - phi1, dlam = (q.lon - p.lon) * kDeg;
    const double h = std::sin(dphi / 2) * std::sin(dphi / 2) +
                     std::cos(phi1) * std::cos(phi2) * std::sin(dlam / 2) * std::sin(dlam / 2);
    DistanceBearing out;
    out.distance = 2.0 * kMeanEarthRadius * std::asin(std::sqrt(std::min(1.0, h)));
    if (out.distance == 0.0) return out;
    const double y = std::sin(dlam) * std::cos(phi2);
    const double x = std::cos(phi1) * std::sin(phi2) - std::sin(phi1) * std::cos(phi2) * std::cos(dlam);
    double bearing = std::atan2(y, x) / kDeg;
    if (bearing < 0.0) bearing += 360.0;
    if (bearing >= 360.0) bearing -= 360.0;
    out.bearing = bearing;
    return out;
}

}  // namespace dfarm::geo
