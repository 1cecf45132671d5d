#pragma once

#include <map>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "facmatch/diagnostics.hpp"
#include "facmatch/entity.hpp"
#include "facmatch/errors.hpp"
#include "facmatch/record_io.hpp"

namespace facmatch {

struct VersionDelta {
    std::set<std::string> modified;
    std::set<std::string> added;
    std::set<std::string> deprecated;

    bool empty() const { return modified.empty() && added.empty() && deprecated.empty(); }
};

/// Compare two snapshots of the same source and fold the result into `next`:
/// changed records get modified=now, unchanged ones keep their previous
/// timestamp, and records that disappeared are carried over with the
/// deprecated flag set (the catalog never forgets an entity).
inline VersionDelta diff_snapshots(const CatalogSnapshot& prev, CatalogSnapshot& next,
                                   const std::string& now) {
    if (prev.source != next.source && !prev.source.empty() && !next.source.empty())
        throw DataError("diff_snapshots: source mismatch ('" + prev.source + "' vs '" +
                        next.source + "')");

    std::map<std::string, const Entity*> old_by_uri;
    for (const auto& e : prev.records) old_by_uri[e.uri] = &e;

    VersionDelta delta;
    std::set<std::string> seen;
    for (auto& e : next.records) {
        seen.insert(e.uri);
        auto it = old_by_uri.find(e.uri);
        if (it == old_by_uri.end()) {
            delta.added.insert(e.uri);
            if (e.modified.empty()) e.modified = now;
        } else if (!semantically_equal(e, *it->second)) {
            delta.modified.insert(e.uri);
            e.modified = now;
        } else {
            e.modified = it->second->modified;
        }
    }
    for (const auto& e : prev.records) {
        if (seen.count(e.uri)) continue;
        delta.deprecated.insert(e.uri);
        Entity kept = e;
        if (!kept.deprecated) {
            kept.deprecated = true;
            kept.modified = now;
        }
        next.records.push_back(std::move(kept));
    }
    return delta;
}

/// Curation overlay: `patches` maps a record URI to field overrides (null
/// drops the field). Overrides go through the normal record parser, so a bad
/// patch fails the same way a bad input line would.
inline size_t apply_patches(CatalogSnapshot& snapshot, const nlohmann::json& patches,
                            Diagnostics* diag = nullptr) {
    if (patches.is_null()) return 0;
    if (!patches.is_object()) throw DataError("patch file: expected an object keyed by uri");
    size_t applied = 0;
    for (auto it = patches.begin(); it != patches.end(); ++it) {
        const std::string& uri = it.key();
        if (!it.value().is_object())
            throw DataError("patch for '" + uri + "': expected an object of field overrides");
        Entity* target = nullptr;
        for (auto& e : snapshot.records)
            if (e.uri == uri) { target = &e; break; }
        if (!target) {
            if (diag) diag->warn("curation", "patch for unknown uri '" + uri + "' ignored");
            continue;
        }
        nlohmann::json merged = record_io::to_record(*target);
        for (auto f = it.value().begin(); f != it.value().end(); ++f) {
            if (f.value().is_null())
                merged.erase(f.key());
            else
                merged[f.key()] = f.value();
        }
        try {
            *target = record_io::parse_record(merged);
        } catch (const DataError& err) {
            throw DataError("patch for '" + uri + "': " + err.what());
        }
        ++applied;
    }
    return applied;
}

}  // namespace facmatch
