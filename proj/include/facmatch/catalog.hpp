#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "facmatch/diagnostics.hpp"
#include "facmatch/entity.hpp"
#include "facmatch/errors.hpp"

namespace facmatch {

/// All entities across sources, addressable by qualified URI. Single writer
/// while the pipeline runs; read-only views can be shared freely.
class Catalog {
public:
    Entity& add(Entity e) {
        std::string quri = e.qualified();
        if (index_.count(quri))
            throw DataError("catalog: duplicate qualified uri " + quri);
        entities_.push_back(std::move(e));
        index_[quri] = entities_.size() - 1;
        return entities_.back();
    }

    const Entity* find(const std::string& qualified_uri) const {
        auto it = index_.find(qualified_uri);
        return it == index_.end() ? nullptr : &entities_[it->second];
    }

    Entity* find_mutable(const std::string& qualified_uri) {
        auto it = index_.find(qualified_uri);
        return it == index_.end() ? nullptr : &entities_[it->second];
    }

    size_t size() const { return entities_.size(); }
    bool empty() const { return entities_.empty(); }

    auto begin() const { return entities_.begin(); }
    auto end() const { return entities_.end(); }
    auto begin() { return entities_.begin(); }
    auto end() { return entities_.end(); }

    std::set<std::string> sources() const {
        std::set<std::string> out;
        for (const auto& e : entities_) out.insert(e.source);
        return out;
    }

    /// Entities of one source, sorted by qualified URI.
    std::vector<const Entity*> by_source(const std::string& source) const {
        std::vector<const Entity*> out;
        for (const auto& e : entities_)
            if (e.source == source) out.push_back(&e);
        std::sort(out.begin(), out.end(),
                  [](const Entity* a, const Entity* b) { return a->qualified() < b->qualified(); });
        return out;
    }

    /// Qualified URIs of all entities, sorted.
    std::vector<std::string> qualified_uris() const {
        std::vector<std::string> out;
        out.reserve(entities_.size());
        for (const auto& e : entities_) out.push_back(e.qualified());
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::deque<Entity> entities_;  // deque: stable addresses across add()
    std::map<std::string, size_t> index_;
};

enum class MeronymyDirection { Broader, Narrower };

/// Transitive closure over part_of edges. Broader walks towards wholes,
/// narrower towards parts (entities declaring this one as part_of target).
/// Cycles are broken and reported through the diagnostics channel.
inline std::vector<const Entity*> meronym_closure(const Entity& start, const Catalog& catalog,
                                                  MeronymyDirection direction,
                                                  Diagnostics* diagnostics = nullptr) {
    // Reverse index for the narrower direction.
    std::map<std::string, std::vector<const Entity*>> narrower_of;
    if (direction == MeronymyDirection::Narrower) {
        for (const auto& e : catalog)
            for (const auto& target : e.part_of) narrower_of[target].push_back(&e);
    }

    std::set<std::string> visited{start.qualified()};
    std::vector<const Entity*> result;
    std::vector<const Entity*> frontier{&start};
    while (!frontier.empty()) {
        const Entity* current = frontier.back();
        frontier.pop_back();
        std::vector<const Entity*> next;
        if (direction == MeronymyDirection::Broader) {
            for (const auto& target : current->part_of) {
                const Entity* parent = catalog.find(target);
                if (!parent) {
                    if (diagnostics)
                        diagnostics->warn("meronymy", "dangling part_of target " + target +
                                                          " from " + current->qualified());
                    continue;
                }
                next.push_back(parent);
            }
        } else {
            auto it = narrower_of.find(current->qualified());
            if (it != narrower_of.end()) next = it->second;
        }
        for (const Entity* e : next) {
            if (!visited.insert(e->qualified()).second) {
                if (diagnostics && e->qualified() == start.qualified())
                    diagnostics->warn("meronymy",
                                      "cycle through " + start.qualified() + " broken");
                continue;
            }
            result.push_back(e);
            frontier.push_back(e);
        }
    }
    std::sort(result.begin(), result.end(),
              [](const Entity* a, const Entity* b) { return a->qualified() < b->qualified(); });
    return result;
}

}  // namespace facmatch
