#pragma once

#include <optional>
#include <regex>
#include <set>
#include <string>

#include "facmatch/entity.hpp"
#include "facmatch/record_io.hpp"
#include "facmatch/util.hpp"

namespace facmatch {

struct LabelEnrichment {
    std::string clean_label;
    std::set<std::string> alt_labels;
    std::optional<double> aperture_m;
    std::optional<std::string> aperture_text;
};

struct AliasIds {
    std::optional<std::string> nssdc_id;
    std::optional<int> launch_year;
};

namespace detail {

inline const std::regex& aperture_re() {
    // number, optional decimal comma/point, then the meter unit as "m", "-m" or " m"
    static const std::regex re(R"(([0-9]+(?:[.,][0-9]+)?)[ -]?m(?![A-Za-z0-9]))");
    return re;
}

inline const std::regex& cospar_re() {
    // 4-digit year, hyphen, 3 digits, letter suffix (e.g. 1980-090A)
    static const std::regex re(R"(^([0-9]{4})-[0-9]{3}[A-Z]{1,4}$)");
    return re;
}

inline std::string collapse_spaces(const std::string& s) {
    std::string out;
    bool pending = false;
    for (char c : s) {
        if (is_ascii_space(c)) {
            if (!out.empty()) pending = true;
        } else {
            if (pending) out.push_back(' ');
            pending = false;
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace detail

/// Mine a full label for aliases hidden in a parenthetical ("(X)",
/// "(X formerly Y)", "(X formerly Y or Z)"), extract the aperture token, and
/// strip trailing boilerplate. Labels without these idioms come back intact.
inline LabelEnrichment parse_label_enrichment(const std::string& full_label) {
    LabelEnrichment out;
    out.clean_label = full_label;

    std::smatch m;
    if (std::regex_search(full_label, m, detail::aperture_re())) {
        auto value = parse_double(m[1].str());
        if (value) {
            out.aperture_m = value;
            out.aperture_text = trim(m[0].str());
        }
    }

    std::string working = full_label;
    std::string short_form;  // the "(X formerly ...)" current name, kept for a composite alias
    size_t open = working.find('(');
    if (open != std::string::npos) {
        size_t close = working.find(')', open + 1);
        std::string content =
            close == std::string::npos ? "" : working.substr(open + 1, close - open - 1);
        bool nested = content.find('(') != std::string::npos;
        content = trim(content);
        if (close != std::string::npos && !content.empty() && !nested) {
            std::string stripped =
                detail::collapse_spaces(working.substr(0, open) + working.substr(close + 1));
            stripped = trim(stripped);
            size_t formerly = content.find(" formerly ");
            if (formerly != std::string::npos) {
                std::string current = trim(content.substr(0, formerly));
                std::string former = trim(content.substr(formerly + 10));
                if (!current.empty()) out.alt_labels.insert(current);
                size_t or_pos = former.find(" or ");
                if (or_pos != std::string::npos) {
                    std::string former_name = trim(former.substr(0, or_pos));
                    std::string former_short = trim(former.substr(or_pos + 4));
                    if (!former_name.empty()) out.alt_labels.insert(former_name);
                    if (!former_short.empty()) out.alt_labels.insert(former_short);
                    if (!former_name.empty() && !former_short.empty())
                        out.alt_labels.insert(former_name + " (" + former_short + ")");
                } else if (!former.empty()) {
                    out.alt_labels.insert(former);
                }
                short_form = current;
            } else {
                out.alt_labels.insert(content);
            }
            if (!stripped.empty()) working = stripped;
        }
    }

    // Trailing boilerplate seen in source labels.
    static const char* kBoilerplate[] = {"Satellite Mission"};
    for (const char* suffix : kBoilerplate) {
        if (ends_with(working, suffix)) {
            working = trim(working.substr(0, working.size() - std::string(suffix).size()));
            break;
        }
    }
    if (!working.empty()) out.clean_label = working;
    // Composite uses the final clean label so boilerplate never leaks into it.
    if (!short_form.empty() && !working.empty())
        out.alt_labels.insert(working + " (" + short_form + ")");
    out.alt_labels.erase(out.clean_label);
    return out;
}

/// Aliases shaped like COSPAR designations carry the NSSDC identifier and the
/// launch year in their leading digits.
inline AliasIds parse_spacecraft_alias(const std::string& alias) {
    AliasIds out;
    std::string t = trim(alias);
    std::smatch m;
    if (std::regex_match(t, m, detail::cospar_re())) {
        out.nssdc_id = t;
        out.launch_year = static_cast<int>(*parse_long(m[1].str()));
    }
    return out;
}

/// String-parsing enrichment of one record: mine the preferred label, keep the
/// original full label as an alternate, and lift identifiers/launch years out
/// of spacecraft aliases.
inline void enrich_entity(Entity& e) {
    LabelEnrichment mined = parse_label_enrichment(e.pref_label);
    if (mined.clean_label != e.pref_label) {
        e.alt_labels.insert(e.pref_label);
        e.pref_label = mined.clean_label;
    }
    for (const auto& alias : mined.alt_labels) e.alt_labels.insert(alias);
    e.alt_labels.erase(e.pref_label);
    if (!e.aperture_m && mined.aperture_m) {
        e.aperture_m = mined.aperture_m;
        e.aperture_text = mined.aperture_text;
    }
    for (const auto& label : e.label_pool()) {
        AliasIds ids = parse_spacecraft_alias(label);
        if (ids.nssdc_id && !e.external_ids.count(IdScheme::Nssdca))
            e.external_ids[IdScheme::Nssdca] = *ids.nssdc_id;
        if (ids.launch_year && !e.launch_year) e.launch_year = ids.launch_year;
    }
}

inline void enrich_snapshot(CatalogSnapshot& snapshot) {
    for (auto& e : snapshot.records) enrich_entity(e);
}

}  // namespace facmatch
