#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace facmatch {

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && is_ascii_space(s[b])) ++b;
    while (e > b && is_ascii_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

/// Case-fold, trim, and collapse internal whitespace runs to single spaces.
/// This is the label normalization shared by the matcher and the resolver.
inline std::string normalize_label(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (char c : s) {
        if (is_ascii_space(c)) {
            if (!out.empty()) pending_space = true;
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    return out;
}

inline std::vector<std::string> split(std::string_view s, char delim) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(delim, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(s.substr(start));
            break;
        }
        parts.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

inline bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

inline bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

/// Shortest decimal representation that round-trips the double ("1" for 1.0).
inline std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

inline std::optional<double> parse_double(std::string_view s) {
    std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    // Accept decimal comma as well as point.
    std::replace(t.begin(), t.end(), ',', '.');
    double v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || p != t.data() + t.size()) return std::nullopt;
    return v;
}

inline std::optional<long> parse_long(std::string_view s) {
    std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    long v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || p != t.data() + t.size()) return std::nullopt;
    return v;
}

/// Longitude wrapped into [-180, 180). Sources mix [0, 360) and signed conventions.
inline double normalize_longitude(double lon) {
    double wrapped = lon - 360.0 * std::floor((lon + 180.0) / 360.0);
    if (wrapped >= 180.0) wrapped -= 360.0;  // guards the lon = -180-epsilon rounding case
    return wrapped;
}

// --- ISO-8601 timestamps with microseconds ("2025-07-23T11:12:18.890248") ---

struct MicroTime {
    std::int64_t seconds = 0;  // UTC seconds since epoch
    std::int32_t micros = 0;
};

inline std::optional<MicroTime> parse_iso_micros(std::string_view s) {
    int y, mo, d, h, mi, se;
    char sep;
    unsigned long frac = 0;
    int frac_digits = 0;
    std::string str(s);
    int n = std::sscanf(str.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi, &se);
    if (n != 7 || (sep != 'T' && sep != ' ')) return std::nullopt;
    size_t dot = str.find('.', 10);
    if (dot != std::string::npos) {
        for (size_t i = dot + 1; i < str.size() && frac_digits < 6; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(str[i]))) break;
            frac = frac * 10 + static_cast<unsigned long>(str[i] - '0');
            ++frac_digits;
        }
        while (frac_digits < 6) {
            frac *= 10;
            ++frac_digits;
        }
    }
    std::tm tm{};
    tm.tm_year = y - 1900;
    tm.tm_mon = mo - 1;
    tm.tm_mday = d;
    tm.tm_hour = h;
    tm.tm_min = mi;
    tm.tm_sec = se;
    std::int64_t secs = static_cast<std::int64_t>(timegm(&tm));
    return MicroTime{secs, static_cast<std::int32_t>(frac)};
}

inline std::string format_iso_micros(const MicroTime& t) {
    std::time_t secs = static_cast<std::time_t>(t.seconds);
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%06d", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                  static_cast<int>(t.micros % 1000000));
    return buf;
}

inline MicroTime add_micros(MicroTime t, std::int64_t delta) {
    std::int64_t total = t.micros + delta;
    t.seconds += total / 1000000;
    total %= 1000000;
    if (total < 0) {
        total += 1000000;
        t.seconds -= 1;
    }
    t.micros = static_cast<std::int32_t>(total);
    return t;
}

}  // namespace facmatch
