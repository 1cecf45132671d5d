#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "facmatch/util.hpp"

namespace facmatch {

enum class FacilityClass {
    Telescope,
    Observatory,
    Spacecraft,
    AirbornePlatform,
    Investigation,
    Unknown,
};

inline std::string_view to_string(FacilityClass c) {
    switch (c) {
        case FacilityClass::Telescope: return "telescope";
        case FacilityClass::Observatory: return "observatory";
        case FacilityClass::Spacecraft: return "spacecraft";
        case FacilityClass::AirbornePlatform: return "airborne_platform";
        case FacilityClass::Investigation: return "investigation";
        case FacilityClass::Unknown: return "unknown";
    }
    return "unknown";
}

inline std::optional<FacilityClass> facility_class_from_string(std::string_view s) {
    std::string t = to_lower(trim(s));
    for (char& c : t)
        if (c == '-' || c == ' ') c = '_';
    if (t == "telescope") return FacilityClass::Telescope;
    if (t == "observatory") return FacilityClass::Observatory;
    if (t == "spacecraft") return FacilityClass::Spacecraft;
    if (t == "airborne_platform" || t == "airborneplatform") return FacilityClass::AirbornePlatform;
    if (t == "investigation") return FacilityClass::Investigation;
    if (t == "unknown" || t.empty()) return FacilityClass::Unknown;
    return std::nullopt;
}

/// External identifier schemes used for cross-source ID resolution.
enum class IdScheme { Naif, Cospar, Nssdca, Mpc };

inline std::string_view to_string(IdScheme s) {
    switch (s) {
        case IdScheme::Naif: return "naif_id";
        case IdScheme::Cospar: return "cospar_id";
        case IdScheme::Nssdca: return "nssdca_id";
        case IdScheme::Mpc: return "mpc_id";
    }
    return "?";
}

constexpr IdScheme kAllIdSchemes[] = {IdScheme::Naif, IdScheme::Cospar, IdScheme::Nssdca,
                                      IdScheme::Mpc};

/// One catalog record. `uri` is the slug inside the source namespace; the
/// qualified form "source:uri" is what meronymy links, synonym sets and
/// mapping records refer to.
struct Entity {
    std::string uri;
    std::string source;
    std::string pref_label;
    std::set<std::string> alt_labels;
    std::set<std::string> notations;
    FacilityClass facility_class = FacilityClass::Unknown;
    std::map<IdScheme, std::string> external_ids;
    std::optional<double> latitude;
    std::optional<double> longitude;  // normalized to [-180, 180) at ingest
    std::optional<double> altitude;
    std::optional<std::string> location_name;
    std::optional<double> aperture_m;
    std::optional<std::string> aperture_text;  // original spelling, kept for round-trip
    std::optional<int> launch_year;
    std::optional<int> start_year;
    std::optional<int> end_year;
    std::set<std::string> wavebands;
    std::optional<std::string> funding_agency;
    std::optional<std::string> description;
    std::set<std::string> part_of;  // qualified URIs of broader entities
    std::optional<std::string> url;
    std::string modified;  // ISO-8601 timestamp; empty until versioned
    bool deprecated = false;
    std::optional<double> type_confidence;
    std::optional<double> location_confidence;
    std::set<std::string> exact_match;  // qualified URIs, populated by the linked output
    nlohmann::json extras = nlohmann::json::object();  // unknown input fields, preserved

    std::string qualified() const { return source + ":" + uri; }

    /// Labels usable for matching: preferred label, alternates and notations.
    std::vector<std::string> label_pool() const {
        std::vector<std::string> pool;
        pool.push_back(pref_label);
        pool.insert(pool.end(), alt_labels.begin(), alt_labels.end());
        pool.insert(pool.end(), notations.begin(), notations.end());
        return pool;
    }

    bool operator==(const Entity& other) const = default;
};

/// Field-level equality on everything the version manager watches. Excludes
/// `modified`, `deprecated`, `exact_match` and `extras`.
inline bool semantically_equal(const Entity& a, const Entity& b) {
    return a.uri == b.uri && a.source == b.source && a.pref_label == b.pref_label &&
           a.alt_labels == b.alt_labels && a.notations == b.notations &&
           a.facility_class == b.facility_class && a.external_ids == b.external_ids &&
           a.latitude == b.latitude && a.longitude == b.longitude && a.altitude == b.altitude &&
           a.location_name == b.location_name && a.aperture_m == b.aperture_m &&
           a.aperture_text == b.aperture_text && a.launch_year == b.launch_year &&
           a.start_year == b.start_year && a.end_year == b.end_year &&
           a.wavebands == b.wavebands && a.funding_agency == b.funding_agency &&
           a.description == b.description && a.part_of == b.part_of && a.url == b.url &&
           a.type_confidence == b.type_confidence && a.location_confidence == b.location_confidence;
}

/// Ordered list of source identifiers, highest priority first. Decides which
/// member of a synonym set supplies the preferred label.
class SourcePriority {
public:
    SourcePriority() = default;
    explicit SourcePriority(std::vector<std::string> order) : order_(std::move(order)) {}

    /// Rank of a source; unlisted sources sort after all listed ones.
    size_t rank(const std::string& source) const {
        for (size_t i = 0; i < order_.size(); ++i)
            if (order_[i] == source) return i;
        return order_.size();
    }

    const std::vector<std::string>& order() const { return order_; }

    /// Every catalog source must appear exactly once.
    bool covers(const std::set<std::string>& sources, std::string* missing = nullptr) const {
        for (const auto& s : sources) {
            if (rank(s) == order_.size()) {
                if (missing) *missing = s;
                return false;
            }
        }
        return true;
    }

private:
    std::vector<std::string> order_;
};

}  // namespace facmatch
