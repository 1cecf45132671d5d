#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "facmatch/errors.hpp"
#include "facmatch/similarity.hpp"
#include "facmatch/util.hpp"

namespace facmatch {

struct ResolverEntry {
    std::string slug;
    std::string preferred;
    std::vector<std::string> aliases;  // includes the preferred label
    std::set<std::string> parents;     // meronymy, slug level
    std::set<std::string> children;
};

struct ResolveHit {
    std::string slug;
    std::string label;  // preferred label of the entry
    double score = 0.0;
};

namespace detail {

inline std::set<std::string> trigrams(const std::string& normalized) {
    std::set<std::string> grams;
    if (normalized.size() < 3) {
        if (!normalized.empty()) grams.insert(normalized);
        return grams;
    }
    for (size_t i = 0; i + 3 <= normalized.size(); ++i) grams.insert(normalized.substr(i, 3));
    return grams;
}

inline double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() || b.empty()) return 0.0;
    size_t inter = 0;
    for (const auto& g : a) inter += b.count(g);
    size_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

/// RFC-4180-ish line split; handles quoted cells with doubled quotes.
inline std::vector<std::string> parse_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cells.push_back(std::move(cur));
    return cells;
}

}  // namespace detail

/// Immutable lookup structure over the resolver dictionary: a normalized
/// inverted index for exact hits and a character-trigram index (0.2 Jaccard
/// floor) feeding Levenshtein ranking for fuzzy ones.
class ResolverIndex {
public:
    /// `dictionary`: object slug → alias array, preferred label first.
    void build(const nlohmann::json& dictionary) {
        if (!dictionary.is_object())
            throw DataError("resolver dictionary: expected an object keyed by slug");
        entries_.clear();
        by_slug_.clear();
        exact_.clear();
        gram_index_.clear();
        entry_grams_.clear();

        for (auto it = dictionary.begin(); it != dictionary.end(); ++it) {
            ResolverEntry entry;
            entry.slug = it.key();
            if (!it.value().is_array() || it.value().empty())
                throw DataError("resolver dictionary: '" + entry.slug +
                                "' must map to a non-empty alias array");
            for (const auto& a : it.value()) entry.aliases.push_back(a.get<std::string>());
            entry.preferred = entry.aliases.front();
            by_slug_[entry.slug] = entries_.size();
            entries_.push_back(std::move(entry));
        }

        for (size_t i = 0; i < entries_.size(); ++i) {
            std::set<std::string> grams;
            for (const auto& alias : entries_[i].aliases) {
                std::string norm = normalize_label(alias);
                if (norm.empty()) continue;
                exact_[norm].insert(i);
                for (const auto& g : detail::trigrams(norm)) {
                    grams.insert(g);
                    gram_index_[g].insert(i);
                }
            }
            entry_grams_.push_back(std::move(grams));
        }
    }

    /// Attach meronymy from the facility table (slug,pref_label,part_of,…).
    /// Unknown slugs in the table are ignored.
    void attach_meronymy(const std::string& csv_text) {
        std::vector<std::string> lines = split(csv_text, '\n');
        for (size_t i = 1; i < lines.size(); ++i) {  // skip header
            std::string line = trim(lines[i]);
            if (line.empty()) continue;
            auto cells = detail::parse_csv_line(line);
            if (cells.size() < 3) continue;
            auto child = by_slug_.find(trim(cells[0]));
            if (child == by_slug_.end()) continue;
            for (const auto& parent_slug : split(cells[2], ';')) {
                std::string p = trim(parent_slug);
                if (p.empty()) continue;
                auto parent = by_slug_.find(p);
                if (parent == by_slug_.end()) continue;
                entries_[child->second].parents.insert(p);
                entries_[parent->second].children.insert(entries_[child->second].slug);
            }
        }
    }

    size_t size() const { return entries_.size(); }

    const ResolverEntry* find(const std::string& slug) const {
        auto it = by_slug_.find(slug);
        return it == by_slug_.end() ? nullptr : &entries_[it->second];
    }

    /// Ordered matches for a query: exact normalized hits at 1.0 first, then
    /// trigram candidates ranked by best Levenshtein similarity.
    std::vector<ResolveHit> resolve(const std::string& query, size_t limit = 10) const {
        std::vector<ResolveHit> hits;
        std::string norm = normalize_label(query);
        if (norm.empty() || limit == 0) return hits;

        std::set<size_t> taken;
        auto exact = exact_.find(norm);
        if (exact != exact_.end()) {
            for (size_t i : exact->second) {
                hits.push_back({entries_[i].slug, entries_[i].preferred, 1.0});
                taken.insert(i);
            }
            std::sort(hits.begin(), hits.end(),
                      [](const ResolveHit& a, const ResolveHit& b) { return a.slug < b.slug; });
        }

        if (hits.size() < limit) {
            std::set<std::string> qgrams = detail::trigrams(norm);
            std::set<size_t> candidates;
            for (const auto& g : qgrams) {
                auto it = gram_index_.find(g);
                if (it == gram_index_.end()) continue;
                candidates.insert(it->second.begin(), it->second.end());
            }
            std::vector<ResolveHit> fuzzy;
            for (size_t i : candidates) {
                if (taken.count(i)) continue;
                if (detail::jaccard(qgrams, entry_grams_[i]) < 0.2) continue;
                double best = 0.0;
                for (const auto& alias : entries_[i].aliases)
                    best = std::max(best, levenshtein_similarity(norm, normalize_label(alias)));
                if (best <= 0.0) continue;
                fuzzy.push_back({entries_[i].slug, entries_[i].preferred, best});
            }
            std::sort(fuzzy.begin(), fuzzy.end(), [](const ResolveHit& a, const ResolveHit& b) {
                if (a.score != b.score) return a.score > b.score;
                return a.slug < b.slug;
            });
            for (auto& h : fuzzy) {
                if (hits.size() >= limit) break;
                hits.push_back(std::move(h));
            }
        }
        if (hits.size() > limit) hits.resize(limit);
        return hits;
    }

    /// Transitive meronymy expansion from one entry, sorted by slug.
    std::vector<const ResolverEntry*> expand(const std::string& slug, bool narrower) const {
        std::vector<const ResolverEntry*> out;
        const ResolverEntry* start = find(slug);
        if (!start) return out;
        std::set<std::string> visited{slug};
        std::vector<const ResolverEntry*> frontier{start};
        while (!frontier.empty()) {
            const ResolverEntry* cur = frontier.back();
            frontier.pop_back();
            const auto& next = narrower ? cur->children : cur->parents;
            for (const auto& s : next) {
                if (!visited.insert(s).second) continue;
                const ResolverEntry* e = find(s);
                if (!e) continue;
                out.push_back(e);
                frontier.push_back(e);
            }
        }
        std::sort(out.begin(), out.end(), [](const ResolverEntry* a, const ResolverEntry* b) {
            return a->slug < b->slug;
        });
        return out;
    }

private:
    std::vector<ResolverEntry> entries_;
    std::map<std::string, size_t> by_slug_;
    std::map<std::string, std::set<size_t>> exact_;
    std::map<std::string, std::set<size_t>> gram_index_;
    std::vector<std::set<std::string>> entry_grams_;
};

}  // namespace facmatch
