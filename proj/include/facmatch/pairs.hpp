#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "facmatch/catalog.hpp"
#include "facmatch/criteria.hpp"
#include "facmatch/diagnostics.hpp"
#include "facmatch/entity.hpp"
#include "facmatch/strategy.hpp"
#include "facmatch/synonym_sets.hpp"

namespace facmatch {

enum class PairStatus { Pending, AutoAccepted, Filtered, Validated, Rejected };

inline std::string_view to_string(PairStatus s) {
    switch (s) {
        case PairStatus::Pending: return "pending";
        case PairStatus::AutoAccepted: return "auto_accepted";
        case PairStatus::Filtered: return "filtered";
        case PairStatus::Validated: return "validated";
        case PairStatus::Rejected: return "rejected";
    }
    return "pending";
}

struct CandidatePair {
    const Entity* left = nullptr;
    const Entity* right = nullptr;
    std::map<std::string, Decision> decisions;
    std::map<std::string, double> scores;  // absent key = inapplicable
    std::optional<double> global_score;
    PairStatus status = PairStatus::Pending;
};

/// Cross product of the two lists, minus entities that already found a match
/// on the other side in an earlier round ("remaining single entities"), minus
/// self-pairs and pairs already in one synonym set. Order is deterministic:
/// left URI, then right URI.
inline std::vector<CandidatePair> generate_pairs(
    const std::vector<const Entity*>& list_a, const std::vector<const Entity*>& list_b,
    const std::optional<std::set<FacilityClass>>& type_filter,
    const SynonymSetRegistry* sets = nullptr) {
    auto filtered_sorted = [&](const std::vector<const Entity*>& list,
                               const std::string& other_source) {
        std::vector<const Entity*> out;
        for (const Entity* e : list) {
            if (!passes_type_filter(type_filter, e->facility_class)) continue;
            if (sets && !other_source.empty() &&
                sets->set_touches_source(e->qualified(), other_source))
                continue;
            out.push_back(e);
        }
        std::sort(out.begin(), out.end(), [](const Entity* x, const Entity* y) {
            return x->qualified() < y->qualified();
        });
        return out;
    };

    std::string source_a = list_a.empty() ? "" : list_a.front()->source;
    std::string source_b = list_b.empty() ? "" : list_b.front()->source;
    std::vector<const Entity*> lefts = filtered_sorted(list_a, source_b);
    std::vector<const Entity*> rights = filtered_sorted(list_b, source_a);

    std::vector<CandidatePair> pairs;
    pairs.reserve(lefts.size() * rights.size());
    for (const Entity* l : lefts) {
        for (const Entity* r : rights) {
            if (l->qualified() == r->qualified()) continue;
            if (sets && sets->same_set(l->qualified(), r->qualified())) continue;
            CandidatePair p;
            p.left = l;
            p.right = r;
            pairs.push_back(std::move(p));
        }
    }
    return pairs;
}

/// A pair matched purely on external identifiers.
struct IdMatch {
    const Entity* left = nullptr;
    const Entity* right = nullptr;
    std::vector<IdScheme> schemes;  // agreeing schemes, sorted
};

/// The most obvious alignments: pairs agreeing on at least one identifier
/// scheme. A value claimed by several entities on one side is ambiguous and
/// only reported; a pair conflicting on any shared scheme is never emitted.
inline std::vector<IdMatch> resolve_external_ids(const std::vector<const Entity*>& list_a,
                                                 const std::vector<const Entity*>& list_b,
                                                 Diagnostics* diag = nullptr) {
    std::map<std::pair<std::string, std::string>, IdMatch> found;
    for (IdScheme scheme : kAllIdSchemes) {
        std::map<std::string, std::vector<const Entity*>> a_by_value, b_by_value;
        for (const Entity* e : list_a) {
            auto it = e->external_ids.find(scheme);
            if (it != e->external_ids.end()) a_by_value[it->second].push_back(e);
        }
        for (const Entity* e : list_b) {
            auto it = e->external_ids.find(scheme);
            if (it != e->external_ids.end()) b_by_value[it->second].push_back(e);
        }
        for (const auto& [value, lefts] : a_by_value) {
            auto bit = b_by_value.find(value);
            if (bit == b_by_value.end()) continue;
            const auto& rights = bit->second;
            if (lefts.size() != 1 || rights.size() != 1) {
                if (diag) {
                    std::string who;
                    for (const auto* e : lefts) who += " " + e->qualified();
                    for (const auto* e : rights) who += " " + e->qualified();
                    diag->warn("external_ids", std::string(to_string(scheme)) + " value '" + value +
                                                   "' is ambiguous across" + who);
                }
                continue;
            }
            const Entity* l = lefts.front();
            const Entity* r = rights.front();
            if (l->qualified() == r->qualified()) continue;
            auto& match = found[{l->qualified(), r->qualified()}];
            match.left = l;
            match.right = r;
            match.schemes.push_back(scheme);
        }
    }

    std::vector<IdMatch> out;
    for (auto& [key, match] : found) {
        // No pair survives a disagreement on another shared scheme.
        if (criteria::identifier(*match.left, *match.right) == Decision::Reject) {
            if (diag)
                diag->info("external_ids", "pair " + key.first + " / " + key.second +
                                               " agrees on one scheme but conflicts on another");
            continue;
        }
        std::sort(match.schemes.begin(), match.schemes.end());
        out.push_back(std::move(match));
    }
    return out;  // map iteration already sorted by (left, right)
}

}  // namespace facmatch
