#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "facmatch/criteria.hpp"
#include "facmatch/diagnostics.hpp"
#include "facmatch/entity.hpp"
#include "facmatch/mapping_record.hpp"
#include "facmatch/pairs.hpp"
#include "facmatch/synonym_sets.hpp"
#include "facmatch/util.hpp"

namespace facmatch {

enum class VerdictDecision { Same, Distinct };

struct Verdict {
    VerdictDecision decision = VerdictDecision::Distinct;
    std::string justification;
    std::string reviewer_label;
};

struct ValidationConfig {
    // How many rejections in a row end the loop for the current pair list.
    int stop_after_consecutive_rejections = 20;
    double rule_threshold = 0.85;
};

/// Deterministic reviewer prompt: task, the narrower-vs-broader caveat, both
/// entities as named-field blocks (populated fields only), and the expected
/// output format.
inline std::string build_prompt(const CandidatePair& pair) {
    auto block = [](const Entity& e) {
        std::string out;
        auto field = [&out](std::string_view name, const std::string& value) {
            if (value.empty()) return;
            out += "  ";
            out += name;
            out += ": ";
            out += value;
            out += "\n";
        };
        auto joined = [](const std::set<std::string>& values) {
            std::string s;
            for (const auto& v : values) {
                if (!s.empty()) s += "; ";
                s += v;
            }
            return s;
        };
        field("pref_label", e.pref_label);
        field("alt_labels", joined(e.alt_labels));
        field("notations", joined(e.notations));
        if (e.facility_class != FacilityClass::Unknown)
            field("class", std::string(to_string(e.facility_class)));
        for (const auto& [scheme, value] : e.external_ids)
            field(to_string(scheme), value);
        if (e.latitude) field("latitude", format_double(*e.latitude));
        if (e.longitude) field("longitude", format_double(*e.longitude));
        if (e.altitude) field("altitude", format_double(*e.altitude));
        if (e.location_name) field("location", *e.location_name);
        if (e.aperture_m) field("aperture", format_double(*e.aperture_m) + " m");
        if (e.launch_year) field("launch_year", std::to_string(*e.launch_year));
        if (e.start_year) field("start_year", std::to_string(*e.start_year));
        if (e.end_year) field("end_year", std::to_string(*e.end_year));
        field("wavebands", joined(e.wavebands));
        if (e.funding_agency) field("funding_agency", *e.funding_agency);
        if (e.description) field("description", *e.description);
        if (e.url) field("url", *e.url);
        return out;
    };

    std::string prompt;
    prompt +=
        "You are reviewing a candidate alignment between two catalog records of "
        "astronomical observation facilities.\n";
    prompt += "Decide whether they refer to the same real-world facility.\n";
    prompt += "Consider a narrower entity distinct from its broader entity.\n\n";
    prompt += "Entity A:\n" + block(*pair.left);
    prompt += "\nEntity B:\n" + block(*pair.right);
    prompt +=
        "\nAnswer on one line. The first token must be SAME or DISTINCT, followed "
        "by a short justification.\n";
    return prompt;
}

/// A reviewer for scored pairs. Returning nullopt defers the pair (transport
/// trouble); the loop moves on without touching the rejection streak.
class Validator {
public:
    virtual ~Validator() = default;
    virtual std::string reviewer_label() const = 0;
    virtual std::optional<Verdict> validate(const CandidatePair& pair) = 0;
};

/// Offline reviewer: accept on a strong global score or an exact label match.
class RuleValidator : public Validator {
public:
    explicit RuleValidator(const ValidationConfig& config) : threshold_(config.rule_threshold) {}

    std::string reviewer_label() const override { return "rule-validator"; }

    std::optional<Verdict> validate(const CandidatePair& pair) override {
        Verdict v;
        v.reviewer_label = reviewer_label();
        double global = pair.global_score.value_or(0.0);
        auto lm = pair.decisions.find("label_match");
        bool label_hit = lm != pair.decisions.end()
                             ? lm->second == Decision::Accept
                             : criteria::label_match(*pair.left, *pair.right) == Decision::Accept;
        if (label_hit) {
            v.decision = VerdictDecision::Same;
            v.justification = "exact label match";
            return v;
        }
        if (global >= threshold_) {
            v.decision = VerdictDecision::Same;
            v.justification = "global score " + format_double(global) + " meets threshold " +
                              format_double(threshold_);
        } else {
            v.decision = VerdictDecision::Distinct;
            v.justification = "global score " + format_double(global) + " below threshold " +
                              format_double(threshold_);
        }
        return v;
    }

private:
    double threshold_;
};

/// Parse a reviewer response: first token SAME/DISTINCT (any case), remainder
/// is the justification. nullopt = unusable response.
inline std::optional<Verdict> parse_verdict_response(const std::string& response,
                                                     const std::string& reviewer) {
    std::string text = trim(response);
    size_t end = 0;
    while (end < text.size() && !is_ascii_space(text[end]) && text[end] != ':' && text[end] != ',' &&
           text[end] != '.' && text[end] != ';')
        ++end;
    std::string head = to_lower(text.substr(0, end));
    // Tolerate light markdown decoration around the token.
    while (!head.empty() && (head.front() == '*' || head.front() == '#' || head.front() == '"'))
        head.erase(head.begin());
    while (!head.empty() && (head.back() == '*' || head.back() == '"')) head.pop_back();
    std::optional<VerdictDecision> decision;
    if (head == "same") decision = VerdictDecision::Same;
    if (head == "distinct") decision = VerdictDecision::Distinct;
    if (!decision) return std::nullopt;
    std::string rest = trim(text.substr(end));
    while (!rest.empty() && (rest.front() == ':' || rest.front() == ',' || rest.front() == '-' ||
                             rest.front() == ';' || rest.front() == '.' || is_ascii_space(rest.front())))
        rest.erase(rest.begin());
    return Verdict{*decision, rest, reviewer};
}

struct ValidationStats {
    size_t calls = 0;
    size_t accepted = 0;
    size_t rejected = 0;
    size_t deferred = 0;
    size_t skipped_same_set = 0;
    bool stopped_early = false;
    size_t inconsistencies = 0;  // Distinct verdicts whose endpoints ended up co-located
};

/// Ranking: highest global score first; ties by the URI pair so reruns agree.
inline std::vector<size_t> rank_pairs(const std::vector<CandidatePair>& pairs) {
    std::vector<size_t> order;
    order.reserve(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i)
        if (pairs[i].global_score) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&pairs](size_t a, size_t b) {
        const CandidatePair& pa = pairs[a];
        const CandidatePair& pb = pairs[b];
        if (*pa.global_score != *pb.global_score) return *pa.global_score > *pb.global_score;
        auto ka = std::make_pair(pa.left->qualified(), pa.right->qualified());
        auto kb = std::make_pair(pb.left->qualified(), pb.right->qualified());
        return ka < kb;
    });
    return order;
}

/// The iterative accept/reject loop. Walks pairs by rank, skips pairs already
/// co-located (transitivity), merges on Same, and stops after K rejections in
/// a row. Deferred pairs neither merge nor count toward the streak.
inline std::pair<std::vector<MappingRecord>, ValidationStats> run_validation_loop(
    std::vector<CandidatePair>& pairs, Validator& validator, const ValidationConfig& config,
    SynonymSetRegistry& sets, MappingClock& clock, Diagnostics* diag = nullptr) {
    std::vector<MappingRecord> accepted;
    ValidationStats stats;
    std::vector<std::pair<std::string, std::string>> distinct_pairs;

    int streak = 0;
    for (size_t idx : rank_pairs(pairs)) {
        if (streak >= config.stop_after_consecutive_rejections) {
            stats.stopped_early = true;
            break;
        }
        CandidatePair& pair = pairs[idx];
        std::string lq = pair.left->qualified();
        std::string rq = pair.right->qualified();
        if (sets.same_set(lq, rq)) {
            ++stats.skipped_same_set;
            continue;
        }
        ++stats.calls;
        auto verdict = validator.validate(pair);
        if (!verdict) {
            ++stats.deferred;
            if (diag) diag->warn("validate", "deferred " + lq + " / " + rq);
            continue;
        }
        if (verdict->decision == VerdictDecision::Same) {
            streak = 0;
            ++stats.accepted;
            pair.status = PairStatus::Validated;
            sets.merge(lq, rq);

            MappingRecord rec;
            rec.subject_id = lq;
            rec.object_id = rq;
            rec.similarity_measure = "weighted_sum";
            rec.similarity_score = *pair.global_score;
            rec.score_values = pair.scores;
            rec.score_values["weighted_sum"] = *pair.global_score;
            rec.mapping_date = clock.next();
            rec.reviewer_label = verdict->reviewer_label;
            rec.comment = verdict->justification.empty() ? "accepted" : verdict->justification;
            rec.id = mint_mapping_id(rec);
            accepted.push_back(std::move(rec));
        } else {
            ++streak;
            ++stats.rejected;
            pair.status = PairStatus::Rejected;
            distinct_pairs.emplace_back(lq, rq);
        }
    }

    for (const auto& [lq, rq] : distinct_pairs) {
        if (sets.same_set(lq, rq)) {
            ++stats.inconsistencies;
            if (diag)
                diag->warn("validate",
                           "inconsistent: " + lq + " and " + rq +
                               " were judged distinct but ended up in one synonym set");
        }
    }
    return {std::move(accepted), stats};
}

}  // namespace facmatch
