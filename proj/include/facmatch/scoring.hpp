#pragma once

#include <map>
#include <optional>
#include <string>

#include "facmatch/diagnostics.hpp"
#include "facmatch/embedding.hpp"
#include "facmatch/entity.hpp"
#include "facmatch/errors.hpp"
#include "facmatch/pairs.hpp"
#include "facmatch/similarity.hpp"
#include "facmatch/tfidf.hpp"

namespace facmatch {

/// Per-score weights for the global weighted mean. Fixed before a run.
struct ScoreWeights {
    std::map<std::string, double> weights;

    /// Levenshtein is down-weighted to 0.5 because edit distance is noisy on
    /// long heterogeneous labels; everything else counts 1.0.
    static ScoreWeights defaults() {
        return {{{"levenshtein", 0.5},
                 {"tfidf", 1.0},
                 {"digit", 1.0},
                 {"acronym", 1.0},
                 {"sentence_transformer", 1.0},
                 {"llm_embeddings", 1.0}}};
    }

    double weight(const std::string& name) const {
        auto it = weights.find(name);
        return it == weights.end() ? 1.0 : it->second;
    }
};

/// Weighted mean over the applicable scores only; inapplicable scores leave
/// the normalizer (renormalization). No applicable score → nullopt.
inline std::optional<double> global_score(const std::map<std::string, double>& scores,
                                          const ScoreWeights& weights) {
    double num = 0, denom = 0;
    for (const auto& [name, value] : scores) {
        double w = weights.weight(name);
        if (w <= 0) continue;
        num += w * value;
        denom += w;
    }
    if (denom == 0) return std::nullopt;
    return num / denom;
}

/// Everything a score evaluation might need; absent members make the
/// corresponding scores inapplicable.
struct ScoringContext {
    const StopwordSet* stopwords = nullptr;
    const TfidfModel* tfidf = nullptr;
    EmbeddingEncoder* sentence_encoder = nullptr;
    EmbeddingEncoder* llm_encoder = nullptr;
    Diagnostics* diag = nullptr;
};

/// One named score for one pair; nullopt = inapplicable (kept out of the
/// weighted sum).
inline std::optional<double> compute_score(const std::string& name, const Entity& left,
                                           const Entity& right, const ScoringContext& ctx) {
    static const StopwordSet kNoStopwords;
    const StopwordSet& sw = ctx.stopwords ? *ctx.stopwords : kNoStopwords;
    if (name == "levenshtein") return pair_levenshtein(left, right);
    if (name == "digit") return digits_match(left, right);
    if (name == "acronym") return pair_acronym(left, right, sw);
    if (name == "tfidf") {
        if (!ctx.tfidf) {
            if (ctx.diag) ctx.diag->warn("scoring", "tfidf requested but no fitted model");
            return std::nullopt;
        }
        return tfidf_cosine(*ctx.tfidf, left, right, ctx.diag);
    }
    if (name == "sentence_transformer" || name == "llm_embeddings") {
        EmbeddingEncoder* enc =
            name == "sentence_transformer" ? ctx.sentence_encoder : ctx.llm_encoder;
        if (!enc) {
            if (ctx.diag) ctx.diag->warn("scoring", name + " requested but no encoder configured");
            return std::nullopt;
        }
        return embedding_cosine(*enc, left, right, ctx.diag);
    }
    throw ConfigError("unknown score '" + name + "'");
}

/// Fill in the named scores and the global score for one pair.
inline void score_pair(CandidatePair& pair, const std::vector<std::string>& score_steps,
                       const ScoringContext& ctx, const ScoreWeights& weights) {
    for (const auto& name : score_steps) {
        auto value = compute_score(name, *pair.left, *pair.right, ctx);
        if (value) pair.scores[name] = *value;
    }
    pair.global_score = global_score(pair.scores, weights);
}

}  // namespace facmatch
