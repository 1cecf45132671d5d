#pragma once

#include <cmath>
#include <set>
#include <string>

#include "facmatch/entity.hpp"
#include "facmatch/errors.hpp"
#include "facmatch/geo.hpp"
#include "facmatch/util.hpp"

namespace facmatch {

enum class Decision { Accept, Reject, Neutral };

inline std::string_view to_string(Decision d) {
    switch (d) {
        case Decision::Accept: return "accept";
        case Decision::Reject: return "reject";
        case Decision::Neutral: return "neutral";
    }
    return "neutral";
}

struct CriteriaConfig {
    double max_distance_km = 4.0;
    // Aperture values from different sources disagree on rounding ("1.52m"
    // vs "1.524m"); tolerance is the larger of 0.01 m and 0.5% relative.
    double aperture_abs_tol_m = 0.01;
    double aperture_rel_tol = 0.005;
};

namespace criteria {

/// Accept iff any normalized label of one side equals one of the other.
inline Decision label_match(const Entity& a, const Entity& b) {
    std::set<std::string> left;
    for (const auto& l : a.label_pool()) {
        std::string n = normalize_label(l);
        if (!n.empty()) left.insert(std::move(n));
    }
    for (const auto& l : b.label_pool()) {
        std::string n = normalize_label(l);
        if (!n.empty() && left.count(n)) return Decision::Accept;
    }
    return Decision::Neutral;
}

/// Reject iff a scheme both sides carry has differing values.
inline Decision identifier(const Entity& a, const Entity& b) {
    for (const auto& [scheme, value] : a.external_ids) {
        auto it = b.external_ids.find(scheme);
        if (it != b.external_ids.end() && it->second != value) return Decision::Reject;
    }
    return Decision::Neutral;
}

inline Decision distance(const Entity& a, const Entity& b, const CriteriaConfig& cfg) {
    if (!a.latitude || !a.longitude || !b.latitude || !b.longitude) return Decision::Neutral;
    double km = geodesic_km(*a.latitude, *a.longitude, *b.latitude, *b.longitude);
    return km > cfg.max_distance_km ? Decision::Reject : Decision::Neutral;
}

/// Reject iff any year field both sides define differs.
inline Decision date(const Entity& a, const Entity& b) {
    auto differs = [](const std::optional<int>& x, const std::optional<int>& y) {
        return x && y && *x != *y;
    };
    if (differs(a.launch_year, b.launch_year) || differs(a.start_year, b.start_year) ||
        differs(a.end_year, b.end_year))
        return Decision::Reject;
    return Decision::Neutral;
}

inline Decision aperture(const Entity& a, const Entity& b, const CriteriaConfig& cfg) {
    if (!a.aperture_m || !b.aperture_m) return Decision::Neutral;
    double x = *a.aperture_m, y = *b.aperture_m;
    double tol = std::max(cfg.aperture_abs_tol_m, cfg.aperture_rel_tol * std::max(x, y));
    return std::fabs(x - y) > tol ? Decision::Reject : Decision::Neutral;
}

inline Decision type(const Entity& a, const Entity& b) {
    if (a.facility_class == FacilityClass::Unknown || b.facility_class == FacilityClass::Unknown)
        return Decision::Neutral;
    return a.facility_class == b.facility_class ? Decision::Neutral : Decision::Reject;
}

}  // namespace criteria

/// Dispatch by canonical step name. Missing data always yields Neutral.
inline Decision evaluate_criterion(const std::string& name, const Entity& left,
                                   const Entity& right, const CriteriaConfig& cfg = {}) {
    if (name == "label_match") return criteria::label_match(left, right);
    if (name == "identifier") return criteria::identifier(left, right);
    if (name == "distance") return criteria::distance(left, right, cfg);
    if (name == "date") return criteria::date(left, right);
    if (name == "aperture") return criteria::aperture(left, right, cfg);
    if (name == "type") return criteria::type(left, right);
    throw ConfigError("unknown criterion '" + name + "'");
}

}  // namespace facmatch
