#pragma once

#include <set>
#include <string>
#include <string_view>

#include "facmatch/errors.hpp"
#include "facmatch/util.hpp"

namespace facmatch {

namespace detail {

inline std::string slug_core(std::string_view label) {
    std::string out;
    out.reserve(label.size());
    bool pending_hyphen = false;
    for (char raw : label) {
        char c = static_cast<char>(std::tolower(static_cast<unsigned char>(raw)));
        if (is_ascii_space(c) || c == '/' || c == '-') {
            if (!out.empty()) pending_hyphen = true;
            continue;
        }
        bool keep = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.';
        if (!keep) continue;
        if (pending_hyphen) out.push_back('-');
        pending_hyphen = false;
        out.push_back(c);
    }
    return out;
}

}  // namespace detail

/// Human-readable URI slug for a label: lowercase, whitespace and '/' become
/// hyphens, anything outside [a-z0-9.-] is dropped, hyphen runs collapse.
/// Collisions with `taken` are resolved with the source-native fallback id,
/// then a numeric keyword. The result is unique within `taken`.
inline std::string slugify(std::string_view label, const std::set<std::string>& taken = {},
                           std::string_view fallback_id = {}) {
    std::string base = detail::slug_core(label);
    std::string fallback = detail::slug_core(fallback_id);
    if (base.empty()) {
        if (fallback.empty())
            throw DataError("slugify: label \"" + std::string(label) +
                            "\" has no sluggable characters and no fallback id");
        base = fallback;
    }
    if (!taken.count(base)) return base;
    if (!fallback.empty() && fallback != base) {
        std::string with_id = base + "-" + fallback;
        if (!taken.count(with_id)) return with_id;
        base = with_id;
    }
    for (int n = 2;; ++n) {
        std::string candidate = base + "-" + std::to_string(n);
        if (!taken.count(candidate)) return candidate;
    }
}

}  // namespace facmatch
