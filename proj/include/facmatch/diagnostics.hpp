#pragma once

#include <string>
#include <vector>

namespace facmatch {

enum class Severity { Info, Warning, Error };

struct Diagnostic {
    Severity severity = Severity::Info;
    std::string context;  // e.g. "meronymy", "strategy:3", "tfidf"
    std::string message;
};

/// Collects non-fatal findings (broken cycles, ambiguous identifiers, empty
/// documents) so the pipeline can keep going and report them at the end.
class Diagnostics {
public:
    void info(std::string context, std::string message) {
        items_.push_back({Severity::Info, std::move(context), std::move(message)});
    }
    void warn(std::string context, std::string message) {
        items_.push_back({Severity::Warning, std::move(context), std::move(message)});
    }
    void error(std::string context, std::string message) {
        items_.push_back({Severity::Error, std::move(context), std::move(message)});
    }

    const std::vector<Diagnostic>& items() const { return items_; }
    bool empty() const { return items_.empty(); }
    size_t count(Severity s) const {
        size_t n = 0;
        for (const auto& d : items_)
            if (d.severity == s) ++n;
        return n;
    }

private:
    std::vector<Diagnostic> items_;
};

}  // namespace facmatch
