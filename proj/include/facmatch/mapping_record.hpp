#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "facmatch/errors.hpp"
#include "facmatch/util.hpp"

namespace facmatch {

/// Name-based UUID (version 5, SHA-1) so identical runs mint identical ids.
inline std::string uuid5(std::string_view name) {
    // Fixed namespace id for this tool's mapping records.
    static const unsigned char ns[16] = {0x6b, 0xa7, 0xb8, 0x14, 0x9d, 0xad, 0x11, 0xd1,
                                         0x80, 0xb4, 0x00, 0xc0, 0x4f, 0xd4, 0x30, 0xc8};
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr);
    EVP_DigestUpdate(ctx, ns, sizeof(ns));
    EVP_DigestUpdate(ctx, name.data(), name.size());
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);

    digest[6] = static_cast<unsigned char>((digest[6] & 0x0F) | 0x50);  // version 5
    digest[8] = static_cast<unsigned char>((digest[8] & 0x3F) | 0x80);  // RFC 4122 variant

    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(36);
    for (int i = 0; i < 16; ++i) {
        if (i == 4 || i == 6 || i == 8 || i == 10) out.push_back('-');
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

/// Injected time source: a fixed base instant plus one microsecond per tick.
/// Keeps mapping_date values unique, ordered, and reproducible across runs.
class MappingClock {
public:
    explicit MappingClock(const std::string& base_iso) {
        auto t = parse_iso_micros(base_iso);
        if (!t) throw ConfigError("bad base timestamp '" + base_iso + "'");
        base_ = *t;
    }

    std::string next() { return format_iso_micros(add_micros(base_, counter_++)); }

private:
    MicroTime base_;
    std::int64_t counter_ = 0;
};

inline constexpr const char* kMappingTool = "facility-matcher/pipeline";
inline constexpr const char* kPredicateExactMatch = "skos:exactMatch";
inline constexpr const char* kJustificationLexical = "semapv:LexicalMatching";

/// One accepted alignment, ready for serialization.
struct MappingRecord {
    std::string id;                      // uuid, minted from content
    std::string subject_id;              // qualified uri, e.g. "pds:1.52-m-…"
    std::string object_id;
    std::string predicate = kPredicateExactMatch;
    std::string similarity_measure;      // "label_match", "weighted_sum", "external_id"
    double similarity_score = 0.0;
    std::map<std::string, double> score_values;  // canonical score/step name → value
    std::string mapping_date;            // ISO with microseconds
    std::string mapping_tool = kMappingTool;
    std::optional<std::string> reviewer_label;
    std::string justification_kind = kJustificationLexical;
    std::optional<std::string> comment;
};

/// Why a record is unfit for serialization, or empty if it is fine.
inline std::string mapping_invariant_violation(const MappingRecord& r) {
    if (r.subject_id.empty() || r.object_id.empty()) return "subject_id/object_id must be set";
    if (r.mapping_date.empty()) return "mapping_date must be set";
    if (r.similarity_measure == "label_match") {
        if (r.similarity_score != 1.0) return "label_match requires similarity_score 1.0";
        if (r.reviewer_label) return "label_match must not carry a reviewer_label";
    } else if (r.similarity_measure == "weighted_sum") {
        if (!r.comment) return "weighted_sum requires a comment";
        if (!r.reviewer_label) return "weighted_sum requires a reviewer_label";
    }
    return "";
}

/// Content-addressed id: two runs that accept the same pair at the same clock
/// tick agree on the uuid.
inline std::string mint_mapping_id(const MappingRecord& r) {
    return uuid5(r.subject_id + "|" + r.object_id + "|" + r.similarity_measure + "|" +
                 r.mapping_date);
}

}  // namespace facmatch
