#pragma once

#include <cmath>

namespace facmatch {

/// IUGG mean Earth radius, kilometers.
constexpr double kEarthRadiusKm = 6371.0088;

/// Great-circle distance between two WGS84 points via the haversine formula.
/// Good to ~0.5% against an ellipsoidal geodesic, far below the 4 km matching
/// limit this feeds.
inline double geodesic_km(double lat1, double lon1, double lat2, double lon2) {
    constexpr double deg = M_PI / 180.0;
    double phi1 = lat1 * deg, phi2 = lat2 * deg;
    double dphi = (lat2 - lat1) * deg;
    double dlambda = (lon2 - lon1) * deg;
    double a = std::sin(dphi / 2) * std::sin(dphi / 2) +
               std::cos(phi1) * std::cos(phi2) * std::sin(dlambda / 2) * std::sin(dlambda / 2);
    if (a > 1.0) a = 1.0;
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(a));
}

}  // namespace facmatch
