#pragma once

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "facmatch/entity.hpp"
#include "facmatch/errors.hpp"
#include "facmatch/util.hpp"

namespace facmatch {

/// True for bytes that belong to a token: ASCII letters/digits, plus any
/// non-ASCII byte so multi-byte UTF-8 sequences stay glued together.
inline bool is_word_byte(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

/// Split into runs of word bytes, ASCII case-folded.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : text) {
        if (is_word_byte(c)) {
            cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                               : static_cast<char>(c));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

/// Case-insensitive stop-word list; typically the union of the shipped
/// English/Spanish/French files.
class StopwordSet {
public:
    StopwordSet() = default;

    void add(std::string_view word) {
        std::string w = to_lower(trim(word));
        if (!w.empty()) words_.insert(std::move(w));
    }

    /// One word per line; blank lines and '#' comments ignored.
    void load(std::istream& in) {
        std::string line;
        while (std::getline(in, line)) {
            std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            add(t);
        }
    }

    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open stop-word file: " + path);
        load(in);
    }

    bool contains(std::string_view word) const { return words_.count(to_lower(word)) > 0; }
    size_t size() const { return words_.size(); }

private:
    std::set<std::string, std::less<>> words_;
};

/// The text an entity contributes to corpus-based scores: every label plus the
/// free-text description and location, space-joined.
inline std::string entity_document(const Entity& e) {
    std::string doc;
    auto append = [&doc](const std::string& part) {
        if (part.empty()) return;
        if (!doc.empty()) doc.push_back(' ');
        doc += part;
    };
    for (const auto& label : e.label_pool()) append(label);
    if (e.description) append(*e.description);
    if (e.location_name) append(*e.location_name);
    return doc;
}

inline std::vector<std::string> content_tokens(const Entity& e, const StopwordSet& stopwords) {
    std::vector<std::string> out;
    for (auto& t : tokenize(entity_document(e)))
        if (!stopwords.contains(t)) out.push_back(std::move(t));
    return out;
}

}  // namespace facmatch
