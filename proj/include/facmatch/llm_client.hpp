#pragma once

// HTTP reviewer (chat-completion style). Separate header so the core library
// does not depend on httplib.

#include <fstream>
#include <optional>
#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "facmatch/diagnostics.hpp"
#include "facmatch/validation.hpp"

namespace facmatch {

struct LlmConfig {
    std::string base_url;  // e.g. http://localhost:11434
    std::string path = "/v1/chat/completions";
    std::string model;
    std::string api_key;   // sent as a bearer token; never written to logs
    int timeout_seconds = 120;
    int retries = 1;
    std::string audit_log_path;  // optional JSONL of request/response bodies
};

/// Reviewer that asks a chat-completion endpoint. One reprompt on an
/// unparseable answer, then the pair is deferred.
class LlmValidator : public Validator {
public:
    explicit LlmValidator(LlmConfig config, Diagnostics* diag = nullptr)
        : config_(std::move(config)), diag_(diag) {
        if (config_.base_url.empty()) throw ConfigError("llm base url is empty");
        if (config_.model.empty()) throw ConfigError("llm model name is empty");
    }

    std::string reviewer_label() const override { return config_.model; }

    std::optional<Verdict> validate(const CandidatePair& pair) override {
        std::string prompt = build_prompt(pair);
        auto first = ask(prompt);
        if (!first) return std::nullopt;
        if (auto v = parse_verdict_response(*first, reviewer_label())) return v;

        std::string reminder = prompt +
                               "\nYour previous answer did not follow the format. Reply again: "
                               "first token SAME or DISTINCT, then the justification.\n";
        auto second = ask(reminder);
        if (!second) return std::nullopt;
        if (auto v = parse_verdict_response(*second, reviewer_label())) return v;
        if (diag_)
            diag_->warn("llm", "unparseable response twice for " + pair.left->qualified() + " / " +
                                   pair.right->qualified());
        return std::nullopt;
    }

private:
    std::optional<std::string> ask(const std::string& prompt) {
        nlohmann::json body = {
            {"model", config_.model},
            {"messages", nlohmann::json::array({nlohmann::json{{"role", "user"},
                                                               {"content", prompt}}})},
            {"temperature", 0},
        };
        std::string payload = body.dump();
        audit("request", payload);

        for (int attempt = 0; attempt <= config_.retries; ++attempt) {
            httplib::Client client(config_.base_url);
            client.set_connection_timeout(config_.timeout_seconds, 0);
            client.set_read_timeout(config_.timeout_seconds, 0);
            httplib::Headers headers;
            if (!config_.api_key.empty())
                headers.emplace("Authorization", "Bearer " + config_.api_key);
            auto res = client.Post(config_.path, headers, payload, "application/json");
            if (!res || res->status != 200) {
                if (diag_ && attempt == config_.retries)
                    diag_->warn("llm", res ? "reviewer returned HTTP " + std::to_string(res->status)
                                           : "no response from " + config_.base_url);
                continue;
            }
            audit("response", res->body);
            try {
                nlohmann::json j = nlohmann::json::parse(res->body);
                return j.at("choices").at(0).at("message").at("content").get<std::string>();
            } catch (const nlohmann::json::exception& e) {
                if (diag_) diag_->warn("llm", std::string("bad response body: ") + e.what());
                return std::nullopt;
            }
        }
        return std::nullopt;
    }

    void audit(const char* direction, const std::string& body) {
        if (config_.audit_log_path.empty()) return;
        std::ofstream out(config_.audit_log_path, std::ios::app);
        out << nlohmann::json{{"direction", direction}, {"body", body}}.dump() << "\n";
    }

    LlmConfig config_;
    Diagnostics* diag_;
};

}  // namespace facmatch
