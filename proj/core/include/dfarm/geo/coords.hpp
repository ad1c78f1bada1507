#pragma once

namespace dfarm::geo {

// WGS-84.
struct Ellipsoid {
    static constexpr double a = 6378137.0;
    static constexpr double f = 1.0 / 298.257223563;
    static constexpr double b = a * (1.0 - f);
    static constexpr double e2 = f * (2.0 - f);
};

inline constexpr double kMeanEarthRadius = 6371008.8;

// Degrees and metres above the ellipsoid. lat in [-90, 90], lon in (-180, 180].
struct GeodeticCoord {
    double lat = 0.0;
    double lon = 0.0;
    double alt = 0.0;
};

struct EcefCoord {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Wraps lon into (-180, 180]; throws DomainError for lat outside [-90, 90]
// or non-finite values.
GeodeticCoord normalized(GeodeticCoord g);

EcefCoord geodetic_to_ecef(const GeodeticCoord& g);
// Bowring initial latitude, then fixed-point refinement until the latitude
// moves less than 1e-12 rad (at most 10 iterations). Points within 1 m of
// the centre are a DomainError.
GeodeticCoord ecef_to_geodetic(const EcefCoord& e);

// tan(geocentric) = (1 - e^2) tan(geodetic), both in degrees, on the ellipsoid surface.
double geocentric_latitude(double geodetic_lat_deg);
double geodetic_latitude(double geocentric_lat_deg);

struct DistanceBearing {
    double distance = 0.0;  // metres
    double bearing = 0.0;   // initial bearing in degrees, [0, 360)
};

// Haversine on a sphere of radius 6371008.8 m; altitudes are ignored. The
// spherical model is off by up to about 0.5 % against the ellipsoid.
// Identical points give (0, 0).
DistanceBearing distance_bearing(const GeodeticCoord& from, const GeodeticCoord& to);

}  // namespace dfarm::geo
