#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "facmatch/diagnostics.hpp"
#include "facmatch/entity.hpp"
#include "facmatch/errors.hpp"
#include "facmatch/util.hpp"

namespace facmatch {

enum class StepKind { AcceptCriterion, RejectCriterion, Score };

struct StepInfo {
    std::string name;  // canonical spelling, as used in strategy files
    StepKind kind;
};

/// Canonical step table: the accept/reject filtering criteria plus the
/// surface and semantic scores.
inline const std::vector<StepInfo>& step_registry() {
    static const std::vector<StepInfo> steps = {
        {"label_match", StepKind::AcceptCriterion},
        {"identifier", StepKind::RejectCriterion},
        {"distance", StepKind::RejectCriterion},
        {"type", StepKind::RejectCriterion},
        {"date", StepKind::RejectCriterion},
        {"aperture", StepKind::RejectCriterion},
        {"levenshtein", StepKind::Score},
        {"tfidf", StepKind::Score},
        {"digit", StepKind::Score},
        {"acronym", StepKind::Score},
        {"sentence_transformer", StepKind::Score},
        {"llm_embeddings", StepKind::Score},
    };
    return steps;
}

/// Alternate spellings accepted on input; render always emits the canonical
/// form.
inline const std::map<std::string, std::string>& step_aliases() {
    static const std::map<std::string, std::string> aliases = {
        {"digits", "digit"},
        {"digits_match", "digit"},
        {"digit_match", "digit"},
        {"levenshtein_similarity", "levenshtein"},
        {"tf_idf", "tfidf"},
        {"tfidf_cosine", "tfidf"},
        {"acronym_probability", "acronym"},
        {"identifier_mismatch", "identifier"},
        {"type_mismatch", "type"},
        {"date_mismatch", "date"},
        {"aperture_mismatch", "aperture"},
        {"sentence_transformers", "sentence_transformer"},
        {"llm_embedding", "llm_embeddings"},
    };
    return aliases;
}

inline std::optional<StepInfo> resolve_step(std::string_view token) {
    std::string t = to_lower(trim(token));
    auto alias = step_aliases().find(t);
    if (alias != step_aliases().end()) t = alias->second;
    for (const auto& s : step_registry())
        if (s.name == t) return s;
    return std::nullopt;
}

/// One `source, source[filters]: steps` line. Filter tokens keep their
/// original spelling so a parsed file renders back unchanged.
struct StrategyLine {
    std::string source_a;
    std::string source_b;
    std::vector<std::string> filter_tokens;              // raw, e.g. {"all", "-spacecraft"}
    std::optional<std::set<FacilityClass>> type_filter;  // include set; nullopt = unfiltered
    std::vector<std::string> steps;                      // canonical names, order preserved
    int line_number = 0;

    bool has_step(std::string_view name) const {
        for (const auto& s : steps)
            if (s == name) return true;
        return false;
    }
};

struct Strategy {
    std::vector<StrategyLine> lines;
};

namespace detail {

inline std::set<FacilityClass> all_classes() {
    return {FacilityClass::Telescope,     FacilityClass::Observatory,
            FacilityClass::Spacecraft,    FacilityClass::AirbornePlatform,
            FacilityClass::Investigation, FacilityClass::Unknown};
}

inline std::set<FacilityClass> build_type_filter(const std::vector<std::string>& tokens,
                                                 int line_number) {
    std::set<FacilityClass> include;
    for (const auto& raw : tokens) {
        std::string tok = trim(raw);
        bool negate = !tok.empty() && tok[0] == '-';
        if (negate) tok = trim(tok.substr(1));
        if (to_lower(tok) == "all") {
            if (negate) include.clear();
            else include = all_classes();
            continue;
        }
        auto cls = facility_class_from_string(tok);
        if (!cls)
            throw ConfigError("line " + std::to_string(line_number) + ": unknown class '" + tok +
                              "' in type filter");
        if (negate)
            include.erase(*cls);
        else
            include.insert(*cls);
    }
    return include;
}

}  // namespace detail

/// Entities pass a type filter if their class is included; untyped entities
/// always pass (they could be anything).
inline bool passes_type_filter(const std::optional<std::set<FacilityClass>>& filter,
                               FacilityClass cls) {
    if (!filter) return true;
    if (cls == FacilityClass::Unknown) return true;
    return filter->count(cls) > 0;
}

/// Parse the mapping-strategy file. Grammar per line:
///   source "," source [ "[" filter ("," filter)* "]" ] ":" step ("," step)*
/// Blank lines and '#' comments are skipped. If `known_sources` is non-empty,
/// source names are checked against it.
inline Strategy parse_strategy(const std::string& text,
                               const std::set<std::string>& known_sources = {}) {
    Strategy out;
    std::vector<std::string> lines = split(text, '\n');
    for (size_t idx = 0; idx < lines.size(); ++idx) {
        int line_no = static_cast<int>(idx + 1);
        std::string line = trim(lines[idx]);
        if (line.empty() || line[0] == '#') continue;

        auto fail = [line_no](const std::string& msg) -> ConfigError {
            return ConfigError("line " + std::to_string(line_no) + ": " + msg);
        };

        size_t colon = line.find(':');
        if (colon == std::string::npos) throw fail("missing ':' between sources and steps");
        std::string head = trim(line.substr(0, colon));
        std::string tail = trim(line.substr(colon + 1));

        StrategyLine sl;
        sl.line_number = line_no;

        size_t bracket = head.find('[');
        if (bracket != std::string::npos) {
            if (head.empty() || head.back() != ']') throw fail("malformed type-filter bracket");
            std::string inside = head.substr(bracket + 1, head.size() - bracket - 2);
            if (inside.find('[') != std::string::npos || inside.find(']') != std::string::npos)
                throw fail("malformed type-filter bracket");
            for (const auto& tok : split(inside, ',')) {
                std::string t = trim(tok);
                if (t.empty()) throw fail("empty token in type filter");
                sl.filter_tokens.push_back(t);
            }
            if (sl.filter_tokens.empty()) throw fail("empty type filter");
            sl.type_filter = detail::build_type_filter(sl.filter_tokens, line_no);
            head = trim(head.substr(0, bracket));
        } else if (head.find(']') != std::string::npos) {
            throw fail("malformed type-filter bracket");
        }

        std::vector<std::string> sources = split(head, ',');
        if (sources.size() != 2) throw fail("expected exactly two sources before ':'");
        sl.source_a = trim(sources[0]);
        sl.source_b = trim(sources[1]);
        if (sl.source_a.empty() || sl.source_b.empty()) throw fail("empty source name");
        if (!known_sources.empty()) {
            for (const auto& s : {sl.source_a, sl.source_b})
                if (!known_sources.count(s)) throw fail("unknown source '" + s + "'");
        }

        for (const auto& tok : split(tail, ',')) {
            std::string t = trim(tok);
            if (t.empty()) continue;
            auto step = resolve_step(t);
            if (!step) throw fail("unknown step '" + t + "'");
            sl.steps.push_back(step->name);
        }
        if (sl.steps.empty()) throw fail("empty step list");

        out.lines.push_back(std::move(sl));
    }
    return out;
}

/// Inverse serializer; parse(render(parse(text))) == parse(text), and a file
/// written in canonical spacing round-trips byte-identically.
inline std::string render_strategy(const Strategy& strategy) {
    std::string out;
    for (const auto& line : strategy.lines) {
        out += line.source_a + ", " + line.source_b;
        if (!line.filter_tokens.empty()) {
            out += "[";
            for (size_t i = 0; i < line.filter_tokens.size(); ++i) {
                if (i) out += ",";
                out += line.filter_tokens[i];
            }
            out += "]";
        }
        out += ": ";
        for (size_t i = 0; i < line.steps.size(); ++i) {
            if (i) out += ", ";
            out += line.steps[i];
        }
        out += "\n";
    }
    return out;
}

/// Non-throwing health check: errors for unknown names, warnings for source
/// pairs whose type coverage overlaps an earlier line and for reject filters
/// written after every score (the pipeline always runs criteria before
/// scores, so that ordering is a likely mistake).
inline std::vector<Diagnostic> validate_strategy(const Strategy& strategy,
                                                 const std::set<std::string>& known_sources) {
    std::vector<Diagnostic> out;
    // Unordered source pair → type coverage already claimed by earlier lines.
    // Two lines on one pair are fine while their class sets stay disjoint
    // (Appendix-style "[spacecraft]" / "[all,-spacecraft]" splits).
    std::map<std::pair<std::string, std::string>, std::set<FacilityClass>> seen_pairs;
    for (const auto& line : strategy.lines) {
        std::string where = "line " + std::to_string(line.line_number);
        for (const auto& s : {line.source_a, line.source_b}) {
            if (!known_sources.empty() && !known_sources.count(s))
                out.push_back({Severity::Error, "strategy", where + ": unknown source '" + s + "'"});
        }
        auto key = std::minmax(line.source_a, line.source_b);
        std::set<FacilityClass> coverage =
            line.type_filter ? *line.type_filter : detail::all_classes();
        auto& claimed = seen_pairs[{key.first, key.second}];
        bool overlaps = false;
        for (FacilityClass cls : coverage) overlaps |= claimed.count(cls) > 0;
        if (overlaps)
            out.push_back({Severity::Warning, "strategy",
                           where + ": source pair " + line.source_a + "/" + line.source_b +
                               " repeats classes already covered by an earlier line"});
        claimed.insert(coverage.begin(), coverage.end());

        int last_score = -1;
        for (size_t i = 0; i < line.steps.size(); ++i) {
            auto info = resolve_step(line.steps[i]);
            if (info && info->kind == StepKind::Score) last_score = static_cast<int>(i);
        }
        for (size_t i = 0; i < line.steps.size(); ++i) {
            auto info = resolve_step(line.steps[i]);
            if (info && info->kind == StepKind::RejectCriterion &&
                last_score >= 0 && static_cast<int>(i) > last_score) {
                out.push_back({Severity::Warning, "strategy",
                               where + ": rejection filter '" + line.steps[i] +
                                   "' written after all scores; filters always run first"});
                break;
            }
        }
    }
    return out;
}

}  // namespace facmatch
