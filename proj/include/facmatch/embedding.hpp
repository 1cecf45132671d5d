#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "facmatch/diagnostics.hpp"
#include "facmatch/entity.hpp"
#include "facmatch/errors.hpp"
#include "facmatch/text.hpp"
#include "facmatch/tfidf.hpp"
#include "facmatch/util.hpp"

namespace facmatch {

inline std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

/// Anything that can turn text into a fixed-dimension vector. Encoders must be
/// deterministic per model_id.
class EmbeddingEncoder {
public:
    virtual ~EmbeddingEncoder() = default;
    virtual std::string model_id() const = 0;
    virtual std::vector<std::vector<double>> encode_batch(const std::vector<std::string>& texts) = 0;

    std::vector<double> encode(const std::string& text) {
        return encode_batch({text}).at(0);
    }
};

/// Deterministic stand-in for a sentence-transformer: hash-projects tokens
/// into a 64-dimension signed bag, so shared tokens raise the cosine. Used by
/// tests and as the default when no encoder endpoint is configured.
class StubEncoder : public EmbeddingEncoder {
public:
    static constexpr size_t kDims = 64;

    explicit StubEncoder(uint64_t seed = 0x9e3779b97f4a7c15ull) : seed_(seed) {}

    std::string model_id() const override { return "stub-hash-64"; }

    std::vector<std::vector<double>> encode_batch(const std::vector<std::string>& texts) override {
        std::vector<std::vector<double>> out;
        out.reserve(texts.size());
        for (const auto& t : texts) out.push_back(encode_one(t));
        return out;
    }

private:
    std::vector<double> encode_one(const std::string& text) const {
        std::vector<double> vec(kDims, 0.0);
        for (const auto& token : tokenize(text)) {
            uint64_t h = fnv1a(token) ^ seed_;
            double sign = (h >> 7) & 1 ? 1.0 : -1.0;
            vec[h % kDims] += sign;
        }
        return vec;
    }

    static uint64_t fnv1a(std::string_view s) {
        uint64_t h = 14695981039346656037ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return h;
    }

    uint64_t seed_;
};

struct EncoderHttpConfig {
    std::string base_url;           // e.g. http://localhost:8089
    std::string path = "/encode";
    std::string model;              // requested model id; empty = server default
    int timeout_seconds = 30;
    int retries = 1;
};

/// Content-addressed vector store: one JSON file per (model_id, sha256(text)).
/// Reads are lock-free once written; writes are serialized.
class EmbeddingCache {
public:
    explicit EmbeddingCache(std::filesystem::path root) : root_(std::move(root)) {}

    std::optional<std::vector<double>> get(const std::string& model_id,
                                           const std::string& text) const {
        std::ifstream in(entry_path(model_id, text));
        if (!in) return std::nullopt;
        try {
            nlohmann::json j = nlohmann::json::parse(in);
            return j.get<std::vector<double>>();
        } catch (const nlohmann::json::exception&) {
            return std::nullopt;
        }
    }

    void put(const std::string& model_id, const std::string& text,
             const std::vector<double>& vec) {
        std::lock_guard<std::mutex> lock(write_mutex_);
        auto path = entry_path(model_id, text);
        std::filesystem::create_directories(path.parent_path());
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            out << nlohmann::json(vec).dump();
        }
        std::filesystem::rename(tmp, path);
    }

private:
    std::filesystem::path entry_path(const std::string& model_id, const std::string& text) const {
        std::string dir;
        for (char c : model_id)
            dir.push_back((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                                  (c >= '0' && c <= '9') || c == '-' || c == '.'
                              ? c
                              : '_');
        return root_ / dir / (sha256_hex(text) + ".json");
    }

    std::filesystem::path root_;
    mutable std::mutex write_mutex_;
};

/// Wraps an encoder with the on-disk cache; hits never touch the inner
/// encoder, so a warmed cache works with the encoder offline.
class CachedEncoder : public EmbeddingEncoder {
public:
    CachedEncoder(std::shared_ptr<EmbeddingEncoder> inner, std::shared_ptr<EmbeddingCache> cache)
        : inner_(std::move(inner)), cache_(std::move(cache)) {}

    std::string model_id() const override { return inner_->model_id(); }

    std::vector<std::vector<double>> encode_batch(const std::vector<std::string>& texts) override {
        std::vector<std::vector<double>> out(texts.size());
        std::vector<size_t> missing;
        for (size_t i = 0; i < texts.size(); ++i) {
            if (auto hit = cache_->get(model_id(), texts[i]))
                out[i] = std::move(*hit);
            else
                missing.push_back(i);
        }
        if (!missing.empty()) {
            std::vector<std::string> batch;
            batch.reserve(missing.size());
            for (size_t i : missing) batch.push_back(texts[i]);
            auto fresh = inner_->encode_batch(batch);
            if (fresh.size() != batch.size())
                throw TransportError("encoder returned " + std::to_string(fresh.size()) +
                                     " vectors for " + std::to_string(batch.size()) + " texts");
            for (size_t k = 0; k < missing.size(); ++k) {
                cache_->put(model_id(), batch[k], fresh[k]);
                out[missing[k]] = std::move(fresh[k]);
            }
        }
        return out;
    }

private:
    std::shared_ptr<EmbeddingEncoder> inner_;
    std::shared_ptr<EmbeddingCache> cache_;
};

/// Cosine of the two entity documents under `encoder`, clipped to [0,1] for
/// use as a score. Transport failures surface as nullopt so the pipeline can
/// drop the score and continue.
inline std::optional<double> embedding_cosine(EmbeddingEncoder& encoder, const Entity& left,
                                              const Entity& right, Diagnostics* diag = nullptr) {
    try {
        auto vecs = encoder.encode_batch({entity_document(left), entity_document(right)});
        double c = cosine(vecs.at(0), vecs.at(1));
        if (c < 0.0) return 0.0;
        if (c > 1.0) return 1.0;
        return c;
    } catch (const TransportError& err) {
        if (diag)
            diag->warn("embedding", "encoder unavailable for " + left.qualified() + " / " +
                                        right.qualified() + ": " + err.what());
        return std::nullopt;
    }
}

}  // namespace facmatch
