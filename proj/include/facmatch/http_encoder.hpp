#pragma once

// Split from embedding.hpp so only network-aware binaries pull in httplib.

#include <string>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "facmatch/embedding.hpp"
#include "facmatch/errors.hpp"

namespace facmatch {

/// Client for the batch-encode endpoint: POST {"model", "texts": [...]} and
/// get back {"model_id", "vectors": [[...], ...]} in the same order.
class HttpEncoder : public EmbeddingEncoder {
public:
    explicit HttpEncoder(EncoderHttpConfig config) : config_(std::move(config)) {
        if (config_.base_url.empty()) throw ConfigError("encoder base url is empty");
    }

    std::string model_id() const override {
        return config_.model.empty() ? "remote-default" : config_.model;
    }

    std::vector<std::vector<double>> encode_batch(const std::vector<std::string>& texts) override {
        nlohmann::json body = {{"texts", texts}};
        if (!config_.model.empty()) body["model"] = config_.model;
        std::string payload = body.dump();

        std::string last_error;
        for (int attempt = 0; attempt <= config_.retries; ++attempt) {
            httplib::Client client(config_.base_url);
            client.set_connection_timeout(config_.timeout_seconds, 0);
            client.set_read_timeout(config_.timeout_seconds, 0);
            auto res = client.Post(config_.path, payload, "application/json");
            if (!res) {
                last_error = "no response from " + config_.base_url + config_.path;
                continue;
            }
            if (res->status != 200) {
                last_error = "encoder returned HTTP " + std::to_string(res->status);
                continue;
            }
            try {
                nlohmann::json j = nlohmann::json::parse(res->body);
                auto vectors = j.at("vectors").get<std::vector<std::vector<double>>>();
                if (vectors.size() != texts.size())
                    throw TransportError("encoder returned " + std::to_string(vectors.size()) +
                                         " vectors for " + std::to_string(texts.size()) + " texts");
                return vectors;
            } catch (const nlohmann::json::exception& e) {
                last_error = std::string("bad encoder response: ") + e.what();
            }
        }
        throw TransportError(last_error.empty() ? "encoder request failed" : last_error);
    }

private:
    EncoderHttpConfig config_;
};

}  // namespace facmatch
