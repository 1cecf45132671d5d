#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "facmatch/entity.hpp"
#include "facmatch/errors.hpp"
#include "facmatch/util.hpp"

namespace facmatch {

/// One loaded snapshot of a single source.
struct CatalogSnapshot {
    std::string source;
    std::string fetched_at;  // ISO timestamp, optional
    std::vector<Entity> records;
};

namespace record_io {

// Reserved keys of the canonical line-delimited record format. Anything else
// is preserved verbatim in the entity's extras.
inline const std::vector<std::string>& reserved_keys() {
    static const std::vector<std::string> keys = {
        "uri",         "source",         "pref_label",     "alt_labels",
        "notations",   "class",          "naif_id",        "cospar_id",
        "nssdca_id",   "mpc_id",         "lat",            "lon",
        "alt",         "location",       "aperture",       "aperture_text",
        "launch_year", "start_year",     "end_year",       "wavebands",
        "funding_agency", "part_of",     "description",    "url",
        "modified",    "deprecated",     "type_confidence", "location_confidence",
        "exact_match"};
    return keys;
}

inline std::optional<double> json_number(const nlohmann::json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_double(v.get<std::string>());
    return std::nullopt;
}

inline std::optional<int> json_year(const nlohmann::json& v) {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_number()) return static_cast<int>(v.get<double>());
    if (v.is_string()) {
        auto n = parse_long(v.get<std::string>());
        if (n) return static_cast<int>(*n);
    }
    return std::nullopt;
}

inline std::set<std::string> json_string_set(const nlohmann::json& v, const std::string& field) {
    std::set<std::string> out;
    if (v.is_string()) {
        out.insert(v.get<std::string>());
        return out;
    }
    if (!v.is_array()) throw DataError("field " + field + ": expected array of strings");
    for (const auto& item : v) {
        if (!item.is_string()) throw DataError("field " + field + ": expected array of strings");
        out.insert(item.get<std::string>());
    }
    return out;
}

/// Parse one canonical record. Throws DataError naming the offending field.
inline Entity parse_record(const nlohmann::json& j) {
    if (!j.is_object()) throw DataError("record is not an object");
    Entity e;
    auto str_field = [&](const char* key) -> std::optional<std::string> {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) return std::nullopt;
        if (!it->is_string()) throw DataError(std::string("field ") + key + ": expected string");
        return it->get<std::string>();
    };
    auto num_field = [&](const char* key) -> std::optional<double> {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) return std::nullopt;
        auto v = json_number(*it);
        if (!v) throw DataError(std::string("field ") + key + ": expected number");
        return v;
    };
    auto year_field = [&](const char* key) -> std::optional<int> {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) return std::nullopt;
        auto v = json_year(*it);
        if (!v) throw DataError(std::string("field ") + key + ": expected year");
        return v;
    };

    auto uri = str_field("uri");
    if (!uri || uri->empty()) throw DataError("field uri: missing or empty");
    e.uri = *uri;
    auto source = str_field("source");
    if (!source || source->empty()) throw DataError("field source: missing or empty");
    e.source = *source;
    auto pref = str_field("pref_label");
    if (!pref || pref->empty()) throw DataError("field pref_label: missing or empty");
    e.pref_label = *pref;

    if (auto it = j.find("alt_labels"); it != j.end())
        e.alt_labels = json_string_set(*it, "alt_labels");
    if (auto it = j.find("notations"); it != j.end())
        e.notations = json_string_set(*it, "notations");
    e.alt_labels.erase(e.pref_label);  // pref_label never duplicated among alternates

    if (auto cls = str_field("class")) {
        auto parsed = facility_class_from_string(*cls);
        if (!parsed) throw DataError("field class: unknown class \"" + *cls + "\"");
        e.facility_class = *parsed;
    }

    if (auto v = str_field("naif_id")) e.external_ids[IdScheme::Naif] = *v;
    if (auto v = str_field("cospar_id")) e.external_ids[IdScheme::Cospar] = *v;
    if (auto v = str_field("nssdca_id")) e.external_ids[IdScheme::Nssdca] = *v;
    if (auto v = str_field("mpc_id")) e.external_ids[IdScheme::Mpc] = *v;

    e.latitude = num_field("lat");
    if (e.latitude && (*e.latitude < -90.0 || *e.latitude > 90.0))
        throw DataError("field lat: " + format_double(*e.latitude) + " outside [-90, 90]");
    if (auto lon = num_field("lon")) e.longitude = normalize_longitude(*lon);
    e.altitude = num_field("alt");
    e.location_name = str_field("location");
    e.aperture_m = num_field("aperture");
    e.aperture_text = str_field("aperture_text");
    e.launch_year = year_field("launch_year");
    e.start_year = year_field("start_year");
    e.end_year = year_field("end_year");
    if (auto it = j.find("wavebands"); it != j.end())
        e.wavebands = json_string_set(*it, "wavebands");
    e.funding_agency = str_field("funding_agency");
    if (auto it = j.find("part_of"); it != j.end()) e.part_of = json_string_set(*it, "part_of");
    e.description = str_field("description");
    e.url = str_field("url");
    if (auto v = str_field("modified")) e.modified = *v;
    if (auto it = j.find("deprecated"); it != j.end() && !it->is_null()) {
        if (it->is_boolean())
            e.deprecated = it->get<bool>();
        else if (it->is_string())
            e.deprecated = to_lower(it->get<std::string>()) == "true";
        else
            throw DataError("field deprecated: expected boolean");
    }
    e.type_confidence = num_field("type_confidence");
    e.location_confidence = num_field("location_confidence");
    if (auto it = j.find("exact_match"); it != j.end())
        e.exact_match = json_string_set(*it, "exact_match");

    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& keys = reserved_keys();
        if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
            e.extras[it.key()] = it.value();
    }
    return e;
}

/// Serialize one entity in canonical key order; extras are appended at the
/// end sorted by key so output is byte-stable.
inline nlohmann::ordered_json to_record(const Entity& e) {
    nlohmann::ordered_json j;
    j["uri"] = e.uri;
    j["source"] = e.source;
    j["pref_label"] = e.pref_label;
    if (!e.alt_labels.empty()) j["alt_labels"] = e.alt_labels;
    if (!e.notations.empty()) j["notations"] = e.notations;
    if (e.facility_class != FacilityClass::Unknown) j["class"] = to_string(e.facility_class);
    for (IdScheme scheme : kAllIdSchemes) {
        auto it = e.external_ids.find(scheme);
        if (it != e.external_ids.end()) j[std::string(to_string(scheme))] = it->second;
    }
    if (e.latitude) j["lat"] = *e.latitude;
    if (e.longitude) j["lon"] = *e.longitude;
    if (e.altitude) j["alt"] = *e.altitude;
    if (e.location_name) j["location"] = *e.location_name;
    if (e.aperture_m) j["aperture"] = *e.aperture_m;
    if (e.aperture_text) j["aperture_text"] = *e.aperture_text;
    if (e.launch_year) j["launch_year"] = *e.launch_year;
    if (e.start_year) j["start_year"] = *e.start_year;
    if (e.end_year) j["end_year"] = *e.end_year;
    if (!e.wavebands.empty()) j["wavebands"] = e.wavebands;
    if (e.funding_agency) j["funding_agency"] = *e.funding_agency;
    if (!e.part_of.empty()) j["part_of"] = e.part_of;
    if (e.description) j["description"] = *e.description;
    if (e.url) j["url"] = *e.url;
    if (!e.modified.empty()) j["modified"] = e.modified;
    if (e.deprecated) j["deprecated"] = true;
    if (e.type_confidence) j["type_confidence"] = *e.type_confidence;
    if (e.location_confidence) j["location_confidence"] = *e.location_confidence;
    if (!e.exact_match.empty()) j["exact_match"] = e.exact_match;
    if (e.extras.is_object()) {
        std::map<std::string, nlohmann::json> sorted;
        for (const auto& [k, v] : e.extras.items()) sorted[k] = v;
        for (const auto& [k, v] : sorted) j[k] = v;
    }
    return j;
}

}  // namespace record_io

/// Parse a stream of canonical records into entities. Errors carry the line
/// number and field; duplicate URIs name both offending lines.
inline std::vector<Entity> load_records(std::istream& in, const std::string& stream_name = "") {
    std::vector<Entity> out;
    std::map<std::string, size_t> seen;  // qualified uri -> line number
    std::string line;
    size_t line_no = 0;
    auto where = [&](size_t n) {
        return (stream_name.empty() ? std::string("line ") : stream_name + ":") +
               std::to_string(n);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        nlohmann::json j = nlohmann::json::parse(trimmed, nullptr, false);
        if (j.is_discarded())
            throw DataError(where(line_no) + ": invalid record (not valid JSON)");
        Entity e;
        try {
            e = record_io::parse_record(j);
        } catch (const DataError& err) {
            throw DataError(where(line_no) + ": " + err.what());
        }
        std::string quri = e.qualified();
        auto [it, inserted] = seen.emplace(quri, line_no);
        if (!inserted)
            throw DataError(where(line_no) + ": duplicate uri " + quri + " (first at " +
                            where(it->second) + ")");
        out.push_back(std::move(e));
    }
    return out;
}

/// Load a single-source snapshot. Mixed sources in one snapshot are an error.
inline CatalogSnapshot load_snapshot(std::istream& in, const std::string& stream_name = "",
                                     const std::string& fetched_at = "") {
    CatalogSnapshot snap;
    snap.fetched_at = fetched_at;
    snap.records = load_records(in, stream_name);
    for (const auto& e : snap.records) {
        if (snap.source.empty())
            snap.source = e.source;
        else if (snap.source != e.source)
            throw DataError((stream_name.empty() ? "snapshot" : stream_name) +
                            ": mixed sources " + snap.source + " and " + e.source);
    }
    return snap;
}

inline void write_records(std::ostream& out, const std::vector<Entity>& records) {
    for (const auto& e : records) out << record_io::to_record(e).dump() << "\n";
}

inline std::string record_line(const Entity& e) { return record_io::to_record(e).dump(); }

}  // namespace facmatch
