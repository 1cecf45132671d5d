#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "facmatch/catalog.hpp"
#include "facmatch/diagnostics.hpp"
#include "facmatch/entity.hpp"
#include "facmatch/record_io.hpp"
#include "facmatch/slug.hpp"
#include "facmatch/synonym_sets.hpp"

namespace facmatch {

/// Numeric-aware ordering: digit runs compare as integers ("1980-090A" before
/// "12058"), everything else byte-wise. Used for alias lists so identifiers
/// sort the way humans expect.
inline bool natural_less(std::string_view a, std::string_view b) {
    size_t i = 0, j = 0;
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    while (i < a.size() && j < b.size()) {
        if (is_digit(a[i]) && is_digit(b[j])) {
            size_t si = i, sj = j;
            while (i < a.size() && is_digit(a[i])) ++i;
            while (j < b.size() && is_digit(b[j])) ++j;
            size_t zi = si, zj = sj;
            while (zi + 1 < i && a[zi] == '0') ++zi;
            while (zj + 1 < j && b[zj] == '0') ++zj;
            size_t la = i - zi, lb = j - zj;
            if (la != lb) return la < lb;
            int cmp = a.substr(zi, la).compare(b.substr(zj, lb));
            if (cmp != 0) return cmp < 0;
            if (i - si != j - sj) return (i - si) < (j - sj);
        } else {
            if (a[i] != b[j])
                return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]);
            ++i;
            ++j;
        }
    }
    return (a.size() - i) < (b.size() - j);
}

/// One synonym set, flattened for the output documents.
struct SetEntry {
    std::string slug;
    std::string root;                  // registry root quri
    std::vector<std::string> members;  // sorted qualified uris
    ElectedLabel preferred;
    std::vector<std::string> aliases;  // preferred label first, rest natural-sorted
    std::set<std::string> parent_slugs;
    bool deprecated = false;  // every member deprecated
};

/// Flatten all synonym sets: elect labels, mint unique slugs (deterministic
/// order), collect alias pools and lift part_of edges to set level.
inline std::vector<SetEntry> build_set_entries(const Catalog& catalog,
                                               const SynonymSetRegistry& sets,
                                               const SourcePriority& priority,
                                               Diagnostics* diag = nullptr) {
    std::vector<SetEntry> entries;
    std::map<std::string, size_t> by_root;
    std::set<std::string> taken;

    for (const auto& [root, members] : sets.all_sets()) {
        SetEntry entry;
        entry.root = root;
        entry.members = members;
        entry.preferred = elect_pref_label(members, catalog, priority);

        std::string fallback = entry.preferred.member_quri;
        size_t colon = fallback.find(':');
        if (colon != std::string::npos) fallback = fallback.substr(colon + 1);
        entry.slug = slugify(entry.preferred.label, taken, fallback);
        taken.insert(entry.slug);

        std::set<std::string> alias_set;
        entry.deprecated = true;
        for (const auto& quri : members) {
            const Entity* e = catalog.find(quri);
            if (!e) continue;
            if (!e->deprecated) entry.deprecated = false;
            for (const auto& label : e->label_pool())
                if (!label.empty()) alias_set.insert(label);
            // Spacecraft designations double as lookup keys; opaque numeric
            // ids (NAIF codes, MPC observatory codes) would only collide.
            for (IdScheme scheme : {IdScheme::Cospar, IdScheme::Nssdca}) {
                auto it = e->external_ids.find(scheme);
                if (it != e->external_ids.end() && !it->second.empty())
                    alias_set.insert(it->second);
            }
        }
        alias_set.erase(entry.preferred.label);
        entry.aliases.push_back(entry.preferred.label);
        std::vector<std::string> rest(alias_set.begin(), alias_set.end());
        std::sort(rest.begin(), rest.end(),
                  [](const std::string& x, const std::string& y) { return natural_less(x, y); });
        entry.aliases.insert(entry.aliases.end(), rest.begin(), rest.end());

        by_root[root] = entries.size();
        entries.push_back(std::move(entry));
    }

    // Second pass: part_of targets resolve to their set's slug.
    for (auto& entry : entries) {
        for (const auto& quri : entry.members) {
            const Entity* e = catalog.find(quri);
            if (!e) continue;
            for (const auto& target : e->part_of) {
                if (!catalog.find(target)) {
                    if (diag)
                        diag->warn("outputs", "dangling part_of target " + target + " from " + quri);
                    continue;
                }
                std::string troot = sets.find(target);
                if (troot == entry.root) continue;  // intra-set edge, nothing to lift
                auto it = by_root.find(troot);
                if (it != by_root.end()) entry.parent_slugs.insert(entries[it->second].slug);
            }
        }
    }

    std::sort(entries.begin(), entries.end(),
              [](const SetEntry& a, const SetEntry& b) { return a.slug < b.slug; });
    return entries;
}

/// The resolver dictionary: slug → alias list, preferred label first. Keys
/// come out sorted; an alias claimed by two sets is reported, not dropped.
inline std::string emit_resolver_json(const std::vector<SetEntry>& entries,
                                      Diagnostics* diag = nullptr) {
    nlohmann::json doc = nlohmann::json::object();
    std::map<std::string, std::string> claimed;
    for (const auto& entry : entries) {
        doc[entry.slug] = entry.aliases;
        if (diag) {
            for (const auto& alias : entry.aliases) {
                auto [it, fresh] = claimed.try_emplace(alias, entry.slug);
                if (!fresh && it->second != entry.slug)
                    diag->warn("outputs", "alias '" + alias + "' appears under both '" +
                                              it->second + "' and '" + entry.slug + "'");
            }
        }
    }
    return doc.dump(2) + "\n";
}

namespace detail {

inline std::string csv_cell(const std::string& s) {
    bool needs_quote = s.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quote) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

}  // namespace detail

/// Facility table: one row per synonym set with its meronymy parents.
inline std::string emit_ivoa_csv(const std::vector<SetEntry>& entries) {
    std::string out = "slug,pref_label,part_of,deprecated\n";
    for (const auto& entry : entries) {
        std::string parents;
        for (const auto& p : entry.parent_slugs) {
            if (!parents.empty()) parents += ";";
            parents += p;
        }
        out += detail::csv_cell(entry.slug) + "," + detail::csv_cell(entry.preferred.label) + "," +
               detail::csv_cell(parents) + "," + (entry.deprecated ? "true" : "false") + "\n";
    }
    return out;
}

/// Every entity in canonical record form, with exact-match edges filled in
/// from the synonym sets. Loading this file back yields the same catalog.
inline std::string emit_linked_catalog(const Catalog& catalog, const SynonymSetRegistry& sets) {
    std::string out;
    for (const auto& quri : catalog.qualified_uris()) {
        const Entity* e = catalog.find(quri);
        Entity linked = *e;
        for (const auto& member : sets.members(quri))
            if (member != quri) linked.exact_match.insert(member);
        out += record_line(linked) + "\n";
    }
    return out;
}

}  // namespace facmatch
