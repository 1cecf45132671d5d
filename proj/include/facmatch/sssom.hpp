#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "facmatch/errors.hpp"
#include "facmatch/mapping_record.hpp"
#include "facmatch/util.hpp"

namespace facmatch {

namespace sssom_detail {

/// Serialized property name and emission position for each score key. The
/// order is fixed so documents are reproducible.
inline const std::vector<std::pair<std::string, std::string>>& score_field_order() {
    static const std::vector<std::pair<std::string, std::string>> order = {
        {"label_match", "label_match"},
        {"levenshtein", "levenshtein_similarity"},
        {"weighted_sum", "weighted_sum"},
        {"tfidf", "tfidf_cosine_similarity"},
        {"digit", "digits_match"},
        {"acronym", "acronym_probability"},
        {"sentence_transformer", "sentence_transformer_cosine_similarity"},
        {"llm_embeddings", "llm_embeddings_cosine_similarity"},
    };
    return order;
}

inline std::string escape_literal(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

inline std::string float_literal(double v) { return "\"" + format_double(v) + "\"^^xsd:float"; }

}  // namespace sssom_detail

/// Render one mapping as a Turtle-style record block.
inline std::string sssom_block(const MappingRecord& r) {
    std::string bad = mapping_invariant_violation(r);
    if (!bad.empty())
        throw DataError("refusing to serialize mapping " + r.subject_id + " / " + r.object_id +
                        ": " + bad);

    using namespace sssom_detail;
    std::string out = "obsf:" + r.id + " a sssom:Mapping ;\n";
    auto field = [&out](const std::string& line) { out += "    " + line + " ;\n"; };

    if (r.comment) field("rdfs:comment \"" + escape_literal(*r.comment) + "\"");
    for (const auto& [key, prop] : score_field_order()) {
        auto it = r.score_values.find(key);
        if (it != r.score_values.end()) field("obsf:" + prop + " " + float_literal(it->second));
    }
    if (r.similarity_measure != "label_match")
        field("sssom:justification " + r.justification_kind);
    field("sssom:mapping_date \"" + r.mapping_date + "\"^^xsd:dateTimeStamp");
    field("sssom:mapping_tool \"" + escape_literal(r.mapping_tool) + "\"");
    field("sssom:object_id " + r.object_id);
    field("sssom:predicate_id " + r.predicate);
    if (r.reviewer_label) field("sssom:reviewer_label \"" + escape_literal(*r.reviewer_label) + "\"");
    field("sssom:similarity_measure \"" + r.similarity_measure + "\"");
    field("sssom:similarity_score " + float_literal(r.similarity_score));
    out += "    sssom:subject_id " + r.subject_id + " .\n";
    return out;
}

/// Full mapping document: prefix header, then one block per record, ordered
/// by mapping_date then id.
inline std::string emit_sssom(const std::vector<MappingRecord>& records) {
    std::set<std::string> source_prefixes;
    for (const auto& r : records) {
        for (const auto& id : {r.subject_id, r.object_id}) {
            size_t colon = id.find(':');
            if (colon != std::string::npos && colon > 0)
                source_prefixes.insert(id.substr(0, colon));
        }
    }

    std::string out;
    out += "@prefix obsf: <urn:obs-facility:mapping:> .\n";
    out += "@prefix sssom: <https://w3id.org/sssom/> .\n";
    out += "@prefix semapv: <https://w3id.org/semapv/vocab/> .\n";
    out += "@prefix skos: <http://www.w3.org/2004/02/skos/core#> .\n";
    out += "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n";
    out += "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n";
    for (const auto& p : source_prefixes)
        out += "@prefix " + p + ": <urn:obs-facility:" + p + ":> .\n";

    std::vector<const MappingRecord*> ordered;
    ordered.reserve(records.size());
    for (const auto& r : records) ordered.push_back(&r);
    std::sort(ordered.begin(), ordered.end(), [](const MappingRecord* a, const MappingRecord* b) {
        return std::tie(a->mapping_date, a->id) < std::tie(b->mapping_date, b->id);
    });

    for (const MappingRecord* r : ordered) {
        out += "\n";
        out += sssom_block(*r);
    }
    return out;
}

/// Flat table form of the same document (one row per mapping).
inline std::string emit_sssom_tsv(const std::vector<MappingRecord>& records) {
    auto cell = [](const std::string& s) {
        std::string out = s;
        for (char& c : out)
            if (c == '\t' || c == '\n' || c == '\r') c = ' ';
        return out;
    };

    std::vector<const MappingRecord*> ordered;
    ordered.reserve(records.size());
    for (const auto& r : records) {
        std::string bad = mapping_invariant_violation(r);
        if (!bad.empty())
            throw DataError("refusing to serialize mapping " + r.subject_id + " / " + r.object_id +
                            ": " + bad);
        ordered.push_back(&r);
    }
    std::sort(ordered.begin(), ordered.end(), [](const MappingRecord* a, const MappingRecord* b) {
        return std::tie(a->mapping_date, a->id) < std::tie(b->mapping_date, b->id);
    });

    std::string out =
        "record_id\tsubject_id\tpredicate_id\tobject_id\tmapping_justification\t"
        "similarity_measure\tsimilarity_score\tmapping_date\tmapping_tool\treviewer_label\t"
        "comment\n";
    for (const MappingRecord* r : ordered) {
        out += r->id + "\t" + cell(r->subject_id) + "\t" + cell(r->predicate) + "\t" +
               cell(r->object_id) + "\t" + cell(r->justification_kind) + "\t" +
               cell(r->similarity_measure) + "\t" + format_double(r->similarity_score) + "\t" +
               r->mapping_date + "\t" + cell(r->mapping_tool) + "\t" +
               cell(r->reviewer_label.value_or("")) + "\t" + cell(r->comment.value_or("")) + "\n";
    }
    return out;
}

}  // namespace facmatch
