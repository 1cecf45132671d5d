#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "facmatch/catalog.hpp"
#include "facmatch/criteria.hpp"
#include "facmatch/diagnostics.hpp"
#include "facmatch/errors.hpp"
#include "facmatch/mapping_record.hpp"
#include "facmatch/pairs.hpp"
#include "facmatch/scoring.hpp"
#include "facmatch/strategy.hpp"
#include "facmatch/synonym_sets.hpp"
#include "facmatch/tfidf.hpp"
#include "facmatch/validation.hpp"

namespace facmatch {

struct PipelineOptions {
    ScoreWeights weights = ScoreWeights::defaults();
    CriteriaConfig criteria;
    ValidationConfig validation;
    std::string base_timestamp = "2026-01-01T00:00:00.000000";
    bool keep_going = false;
};

struct LineReport {
    int line_number = 0;
    std::string source_a;
    std::string source_b;
    size_t id_matches = 0;
    size_t pairs_generated = 0;
    size_t auto_accepted = 0;
    size_t filtered = 0;
    size_t scored = 0;
    size_t unscorable = 0;
    ValidationStats validation;
    double wall_seconds = 0.0;
    std::string error;  // non-empty when the line aborted under keep_going
};

struct RunReport {
    std::vector<LineReport> lines;
    size_t total_mappings = 0;
    size_t synonym_sets = 0;
    size_t diag_warnings = 0;
    size_t diag_errors = 0;

    nlohmann::json to_json() const {
        nlohmann::json doc;
        doc["lines"] = nlohmann::json::array();
        for (const auto& l : lines) {
            nlohmann::json jl = {
                {"line", l.line_number},
                {"sources", {l.source_a, l.source_b}},
                {"id_matches", l.id_matches},
                {"pairs_generated", l.pairs_generated},
                {"auto_accepted", l.auto_accepted},
                {"filtered", l.filtered},
                {"scored", l.scored},
                {"unscorable", l.unscorable},
                {"validation",
                 {{"calls", l.validation.calls},
                  {"accepted", l.validation.accepted},
                  {"rejected", l.validation.rejected},
                  {"deferred", l.validation.deferred},
                  {"skipped_same_set", l.validation.skipped_same_set},
                  {"stopped_early", l.validation.stopped_early},
                  {"inconsistencies", l.validation.inconsistencies}}},
                {"wall_seconds", l.wall_seconds},
            };
            if (!l.error.empty()) jl["error"] = l.error;
            doc["lines"].push_back(std::move(jl));
        }
        doc["total_mappings"] = total_mappings;
        doc["synonym_sets"] = synonym_sets;
        doc["diagnostics"] = {{"warnings", diag_warnings}, {"errors", diag_errors}};
        return doc;
    }
};

struct PipelineResult {
    std::vector<MappingRecord> mappings;
    RunReport report;
};

namespace detail {

/// Criteria stage for one pair: accept-type steps first (first Accept wins
/// and short-circuits), then reject-type steps, both in the line's order.
inline void apply_criteria(CandidatePair& pair, const StrategyLine& line,
                           const CriteriaConfig& cfg) {
    for (const auto& step : line.steps) {
        auto info = resolve_step(step);
        if (!info || info->kind != StepKind::AcceptCriterion) continue;
        Decision d = evaluate_criterion(step, *pair.left, *pair.right, cfg);
        pair.decisions[step] = d;
        if (d == Decision::Accept) {
            pair.status = PairStatus::AutoAccepted;
            return;
        }
    }
    for (const auto& step : line.steps) {
        auto info = resolve_step(step);
        if (!info || info->kind != StepKind::RejectCriterion) continue;
        Decision d = evaluate_criterion(step, *pair.left, *pair.right, cfg);
        pair.decisions[step] = d;
        if (d == Decision::Reject) {
            pair.status = PairStatus::Filtered;
            return;
        }
    }
}

inline std::vector<std::string> score_steps(const StrategyLine& line) {
    std::vector<std::string> out;
    for (const auto& step : line.steps) {
        auto info = resolve_step(step);
        if (info && info->kind == StepKind::Score) out.push_back(step);
    }
    return out;
}

}  // namespace detail

/// Run one strategy line against the catalog: external-id resolving, pair
/// generation, criteria, scores, validation. Mappings append to `out`.
inline LineReport run_strategy_line(const StrategyLine& line, Catalog& catalog,
                                    SynonymSetRegistry& sets, Validator& validator,
                                    const PipelineOptions& opts, const ScoringContext& base_ctx,
                                    MappingClock& clock, std::vector<MappingRecord>& out,
                                    Diagnostics& diag) {
    LineReport report;
    report.line_number = line.line_number;
    report.source_a = line.source_a;
    report.source_b = line.source_b;
    auto t0 = std::chrono::steady_clock::now();

    std::vector<const Entity*> list_a = catalog.by_source(line.source_a);
    std::vector<const Entity*> list_b = catalog.by_source(line.source_b);

    // Stage 1: the obvious alignments — shared external identifiers.
    std::vector<const Entity*> ids_a, ids_b;
    for (const Entity* e : list_a)
        if (passes_type_filter(line.type_filter, e->facility_class)) ids_a.push_back(e);
    for (const Entity* e : list_b)
        if (passes_type_filter(line.type_filter, e->facility_class)) ids_b.push_back(e);
    for (const IdMatch& m : resolve_external_ids(ids_a, ids_b, &diag)) {
        std::string lq = m.left->qualified(), rq = m.right->qualified();
        if (sets.same_set(lq, rq)) continue;
        sets.merge(lq, rq);
        ++report.id_matches;

        MappingRecord rec;
        rec.subject_id = lq;
        rec.object_id = rq;
        rec.similarity_measure = "external_id";
        rec.similarity_score = 1.0;
        rec.mapping_date = clock.next();
        std::string agreed;
        for (IdScheme s : m.schemes) {
            if (!agreed.empty()) agreed += ", ";
            agreed += std::string(to_string(s));
        }
        rec.comment = "shared identifier (" + agreed + ")";
        rec.id = mint_mapping_id(rec);
        out.push_back(std::move(rec));
    }

    // Stage 2: full candidate generation over the remaining single entities.
    std::vector<CandidatePair> pairs = generate_pairs(list_a, list_b, line.type_filter, &sets);
    report.pairs_generated = pairs.size();

    // Stage 3: filtering criteria.
    for (CandidatePair& pair : pairs) {
        std::string lq = pair.left->qualified(), rq = pair.right->qualified();
        if (sets.same_set(lq, rq)) continue;  // co-located by an earlier accept
        detail::apply_criteria(pair, line, opts.criteria);
        if (pair.status == PairStatus::AutoAccepted) {
            ++report.auto_accepted;
            sets.merge(lq, rq);

            MappingRecord rec;
            rec.subject_id = lq;
            rec.object_id = rq;
            rec.similarity_measure = "label_match";
            rec.similarity_score = 1.0;
            rec.score_values["label_match"] = 1.0;
            rec.mapping_date = clock.next();
            rec.id = mint_mapping_id(rec);
            out.push_back(std::move(rec));
        } else if (pair.status == PairStatus::Filtered) {
            ++report.filtered;
        }
    }

    // Stage 4: scores for everything still in play.
    std::vector<std::string> score_names = detail::score_steps(line);
    std::vector<CandidatePair> survivors;
    for (CandidatePair& pair : pairs) {
        if (pair.status != PairStatus::Pending) continue;
        if (sets.same_set(pair.left->qualified(), pair.right->qualified())) continue;
        survivors.push_back(std::move(pair));
    }

    ScoringContext ctx = base_ctx;
    TfidfModel tfidf_model;
    bool want_tfidf = false;
    for (const auto& s : score_names) want_tfidf |= s == "tfidf";
    if (want_tfidf) {
        static const StopwordSet kNoStopwords;
        std::vector<const Entity*> corpus = list_a;
        corpus.insert(corpus.end(), list_b.begin(), list_b.end());
        tfidf_model = fit_tfidf(corpus, ctx.stopwords ? *ctx.stopwords : kNoStopwords);
        ctx.tfidf = &tfidf_model;
    }
    ctx.diag = &diag;

    for (CandidatePair& pair : survivors) {
        score_pair(pair, score_names, ctx, opts.weights);
        if (pair.global_score) {
            ++report.scored;
        } else {
            ++report.unscorable;
            diag.info("scoring", "no applicable score for " + pair.left->qualified() + " / " +
                                     pair.right->qualified());
        }
    }

    // Stage 5: ranked validation with the stop rule.
    auto [accepted, stats] =
        run_validation_loop(survivors, validator, opts.validation, sets, clock, &diag);
    report.validation = stats;
    for (auto& rec : accepted) out.push_back(std::move(rec));

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

/// The full mapping run: every strategy line in order against one catalog.
inline PipelineResult run_pipeline(Catalog& catalog, const Strategy& strategy,
                                   SynonymSetRegistry& sets, Validator& validator,
                                   const PipelineOptions& opts, const ScoringContext& base_ctx,
                                   Diagnostics& diag) {
    PipelineResult result;
    MappingClock clock(opts.base_timestamp);

    for (const StrategyLine& line : strategy.lines) {
        try {
            result.report.lines.push_back(run_strategy_line(
                line, catalog, sets, validator, opts, base_ctx, clock, result.mappings, diag));
        } catch (const std::runtime_error& e) {
            if (!opts.keep_going)
                throw;
            LineReport failed;
            failed.line_number = line.line_number;
            failed.source_a = line.source_a;
            failed.source_b = line.source_b;
            failed.error = e.what();
            diag.error("pipeline", "line " + std::to_string(line.line_number) + ": " + e.what());
            result.report.lines.push_back(std::move(failed));
        }
    }

    result.report.total_mappings = result.mappings.size();
    result.report.synonym_sets = sets.all_sets().size();
    result.report.diag_warnings = diag.count(Severity::Warning);
    result.report.diag_errors = diag.count(Severity::Error);
    return result;
}

}  // namespace facmatch
