#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "facmatch/catalog.hpp"
#include "facmatch/entity.hpp"

namespace facmatch {

/// Union-find over qualified URIs with path compression. The root of a set is
/// always its smallest URI, which keeps every derived artifact deterministic
/// regardless of merge order.
class SynonymSetRegistry {
public:
    explicit SynonymSetRegistry(const Catalog& catalog) : catalog_(&catalog) {}

    const Catalog& catalog() const { return *catalog_; }

    std::string find(const std::string& quri) const {
        auto it = parent_.find(quri);
        if (it == parent_.end()) return quri;
        // Path compression on the mutable cache.
        std::vector<std::string> path;
        std::string current = quri;
        while (true) {
            auto p = parent_.find(current);
            if (p == parent_.end() || p->second == current) break;
            path.push_back(current);
            current = p->second;
        }
        for (const auto& node : path) parent_[node] = current;
        return current;
    }

    bool same_set(const std::string& a, const std::string& b) const { return find(a) == find(b); }

    /// Merge two entities' sets. Returns false when already merged (no-op).
    bool merge(const std::string& a, const std::string& b) {
        std::string ra = find(a), rb = find(b);
        if (ra == rb) return false;
        if (rb < ra) std::swap(ra, rb);  // ra is the smaller URI, the surviving root
        parent_[rb] = ra;
        parent_.emplace(ra, ra);
        auto& target = members_[ra];
        if (target.empty()) target.push_back(ra);
        auto moved = members_.find(rb);
        if (moved != members_.end()) {
            target.insert(target.end(), moved->second.begin(), moved->second.end());
            members_.erase(moved);
        } else {
            target.push_back(rb);
        }
        return true;
    }

    /// Members of the set containing quri (the entity itself for singletons),
    /// sorted by qualified URI.
    std::vector<std::string> members(const std::string& quri) const {
        std::string root = find(quri);
        auto it = members_.find(root);
        std::vector<std::string> out =
            it == members_.end() ? std::vector<std::string>{root} : it->second;
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Union of every member's labels, alternates and notations. This pool
    /// grows as sets merge and feeds the later mapping rounds.
    std::vector<std::string> alias_pool(const std::string& quri) const {
        std::set<std::string> seen;
        std::vector<std::string> pool;
        for (const auto& member : members(quri)) {
            const Entity* e = catalog_->find(member);
            if (!e) continue;
            for (auto& label : e->label_pool())
                if (seen.insert(label).second) pool.push_back(label);
        }
        return pool;
    }

    /// Does the set of `quri` contain any entity from `source` besides itself?
    bool set_touches_source(const std::string& quri, const std::string& source) const {
        for (const auto& member : members(quri)) {
            if (member == quri) continue;
            const Entity* e = catalog_->find(member);
            if (e && e->source == source) return true;
        }
        return false;
    }

    /// All sets over the catalog, keyed by root, singletons included.
    std::map<std::string, std::vector<std::string>> all_sets() const {
        std::map<std::string, std::vector<std::string>> out;
        for (const auto& e : *catalog_) {
            std::string quri = e.qualified();
            out[find(quri)].push_back(quri);
        }
        for (auto& [root, members] : out) std::sort(members.begin(), members.end());
        return out;
    }

private:
    const Catalog* catalog_;
    mutable std::unordered_map<std::string, std::string> parent_;
    std::unordered_map<std::string, std::vector<std::string>> members_;
};

struct ElectedLabel {
    std::string label;
    std::string source;
    std::string member_quri;  // the member that supplied the label
};

/// Preferred label of a synonym set: the member whose source ranks highest in
/// the priority order; ties within one source broken by shortest label, then
/// lexicographic.
inline ElectedLabel elect_pref_label(const std::vector<std::string>& set_members,
                                     const Catalog& catalog, const SourcePriority& priority) {
    const Entity* best = nullptr;
    size_t best_rank = 0;
    for (const auto& quri : set_members) {
        const Entity* e = catalog.find(quri);
        if (!e) continue;
        size_t rank = priority.rank(e->source);
        if (!best) {
            best = e;
            best_rank = rank;
            continue;
        }
        auto key = [](size_t r, const Entity* ent) {
            return std::make_tuple(r, ent->pref_label.size(), ent->pref_label, ent->source,
                                   ent->qualified());
        };
        if (key(rank, e) < key(best_rank, best)) {
            best = e;
            best_rank = rank;
        }
    }
    if (!best) throw DataError("elect_pref_label: empty or unresolvable synonym set");
    return {best->pref_label, best->source, best->qualified()};
}

}  // namespace facmatch
