#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "facmatch/entity.hpp"
#include "facmatch/text.hpp"
#include "facmatch/util.hpp"

namespace facmatch {

/// Classic edit distance (insert/delete/substitute, unit costs), two-row DP.
inline size_t levenshtein_distance(std::string_view a, std::string_view b) {
    if (a.size() > b.size()) std::swap(a, b);
    std::vector<size_t> prev(a.size() + 1), cur(a.size() + 1);
    for (size_t i = 0; i <= a.size(); ++i) prev[i] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
        cur[0] = j;
        for (size_t i = 1; i <= a.size(); ++i) {
            size_t sub = prev[i - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[i] = std::min({prev[i] + 1, cur[i - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[a.size()];
}

/// 1 - dist/max(len), computed on case-folded strings. Two empty strings are
/// identical (1.0); one empty string shares nothing (0.0).
inline double levenshtein_similarity(std::string_view s1, std::string_view s2) {
    std::string a = to_lower(s1), b = to_lower(s2);
    if (a.empty() && b.empty()) return 1.0;
    size_t longest = std::max(a.size(), b.size());
    if (a.empty() || b.empty()) return 0.0;
    return 1.0 - static_cast<double>(levenshtein_distance(a, b)) / static_cast<double>(longest);
}

/// Best Levenshtein similarity over the cross product of both label pools.
inline double pair_levenshtein(const Entity& left, const Entity& right) {
    double best = 0.0;
    for (const auto& a : left.label_pool())
        for (const auto& b : right.label_pool()) best = std::max(best, levenshtein_similarity(a, b));
    return best;
}

namespace detail {

inline std::vector<double> extract_numbers(const std::string& text) {
    std::vector<double> out;
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] >= '0' && text[i] <= '9') {
            size_t j = i;
            while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
            if (j < text.size() && (text[j] == '.' || text[j] == ',') && j + 1 < text.size() &&
                text[j + 1] >= '0' && text[j + 1] <= '9') {
                ++j;
                while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
            }
            if (auto v = parse_double(text.substr(i, j - i))) out.push_back(*v);
            i = j;
        } else {
            ++i;
        }
    }
    return out;
}

inline double round2(double v) { return std::round(v * 100.0) / 100.0; }
inline double trunc2(double v) { return std::trunc(v * 100.0) / 100.0; }

inline bool numbers_match(double a, double b) {
    return round2(a) == round2(b) || trunc2(a) == trunc2(b);
}

}  // namespace detail

/// Ratio of numbers appearing on both sides after rounding/truncation to two
/// decimals, over the larger multiset. No numbers on either side means the
/// score does not apply.
inline std::optional<double> digits_match(const Entity& left, const Entity& right) {
    auto a = detail::extract_numbers(entity_document(left));
    auto b = detail::extract_numbers(entity_document(right));
    if (a.empty() || b.empty()) return std::nullopt;
    std::vector<bool> used(b.size(), false);
    size_t matched = 0;
    for (double x : a) {
        for (size_t j = 0; j < b.size(); ++j) {
            if (!used[j] && detail::numbers_match(x, b[j])) {
                used[j] = true;
                ++matched;
                break;
            }
        }
    }
    return static_cast<double>(matched) / static_cast<double>(std::max(a.size(), b.size()));
}

namespace detail {

inline size_t lcs_length(std::string_view a, std::string_view b) {
    std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (size_t i = 1; i <= a.size(); ++i) {
        for (size_t j = 1; j <= b.size(); ++j) {
            if (a[i - 1] == b[j - 1])
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
        std::fill(cur.begin(), cur.end(), 0);
    }
    return prev[b.size()];
}

inline bool is_acronym_candidate(const std::string& token) {
    if (token.size() < 2 || token.size() > 10) return false;
    for (char c : token)
        if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))) return false;
    return true;
}

/// Score one orientation: how much of `candidate` appears, in order, in the
/// initials of `expansion`'s non-stopword tokens.
inline double acronym_score(const std::string& candidate, const std::string& expansion,
                            const StopwordSet& stopwords) {
    auto short_tokens = tokenize(candidate);
    if (short_tokens.size() != 1 || !is_acronym_candidate(short_tokens[0])) return 0.0;
    std::string initials;
    for (const auto& t : tokenize(expansion))
        if (!stopwords.contains(t)) initials.push_back(t[0]);
    if (initials.empty()) return 0.0;
    return static_cast<double>(lcs_length(short_tokens[0], initials)) /
           static_cast<double>(short_tokens[0].size());
}

}  // namespace detail

/// Probability that one label is an acronym of the other; tries both
/// orientations.
inline double acronym_probability(const std::string& a, const std::string& b,
                                  const StopwordSet& stopwords) {
    return std::max(detail::acronym_score(a, b, stopwords), detail::acronym_score(b, a, stopwords));
}

/// Best acronym probability over the cross product of both label pools.
inline double pair_acronym(const Entity& left, const Entity& right, const StopwordSet& stopwords) {
    double best = 0.0;
    for (const auto& a : left.label_pool())
        for (const auto& b : right.label_pool())
            best = std::max(best, acronym_probability(a, b, stopwords));
    return best;
}

}  // namespace facmatch
