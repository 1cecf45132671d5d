#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "facmatch/diagnostics.hpp"
#include "facmatch/entity.hpp"
#include "facmatch/errors.hpp"
#include "facmatch/text.hpp"

namespace facmatch {

/// Dense cosine; zero vector on either side gives 0 by convention.
inline double cosine(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size())
        throw DataError("cosine: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                        std::to_string(v.size()) + ")");
    double dot = 0, nu = 0, nv = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0 || nv == 0) return 0.0;
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

/// Cosine over token-keyed sparse vectors.
inline double sparse_cosine(const std::map<std::string, double>& u,
                            const std::map<std::string, double>& v) {
    double dot = 0, nu = 0, nv = 0;
    for (const auto& [t, w] : u) nu += w * w;
    for (const auto& [t, w] : v) nv += w * w;
    if (nu == 0 || nv == 0) return 0.0;
    auto iu = u.begin();
    auto iv = v.begin();
    while (iu != u.end() && iv != v.end()) {
        if (iu->first < iv->first)
            ++iu;
        else if (iv->first < iu->first)
            ++iv;
        else {
            dot += iu->second * iv->second;
            ++iu;
            ++iv;
        }
    }
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

/// tf-idf over the synthetic corpus of entity documents: one document per
/// entity, tf = raw in-document count, idf = ln(N / df).
class TfidfModel {
public:
    TfidfModel() = default;
    explicit TfidfModel(const StopwordSet& stopwords) : stopwords_(&stopwords) {}

    void fit(const std::vector<const Entity*>& corpus) {
        n_docs_ = corpus.size();
        df_.clear();
        vocabulary_.clear();
        for (const Entity* e : corpus) {
            std::map<std::string, size_t> counts = term_counts(*e);
            for (const auto& [token, n] : counts) ++df_[token];
        }
        size_t index = 0;
        for (const auto& [token, n] : df_) vocabulary_[token] = index++;
    }

    size_t n_docs() const { return n_docs_; }
    const std::map<std::string, size_t>& vocabulary() const { return vocabulary_; }

    size_t df(const std::string& token) const {
        auto it = df_.find(token);
        return it == df_.end() ? 0 : it->second;
    }

    /// ln(N/df); tokens outside the fitted vocabulary carry no weight.
    double idf(const std::string& token) const {
        size_t d = df(token);
        if (d == 0 || n_docs_ == 0) return 0.0;
        return std::log(static_cast<double>(n_docs_) / static_cast<double>(d));
    }

    std::map<std::string, double> vectorize(const Entity& e) const {
        std::map<std::string, double> vec;
        for (const auto& [token, tf] : term_counts(e)) {
            double w = static_cast<double>(tf) * idf(token);
            if (w != 0.0) vec[token] = w;
        }
        return vec;
    }

private:
    std::map<std::string, size_t> term_counts(const Entity& e) const {
        std::map<std::string, size_t> counts;
        static const StopwordSet kEmpty;
        const StopwordSet& sw = stopwords_ ? *stopwords_ : kEmpty;
        for (const auto& t : content_tokens(e, sw)) ++counts[t];
        return counts;
    }

    const StopwordSet* stopwords_ = nullptr;
    std::map<std::string, size_t> df_;
    std::map<std::string, size_t> vocabulary_;
    size_t n_docs_ = 0;
};

inline TfidfModel fit_tfidf(const std::vector<const Entity*>& corpus,
                            const StopwordSet& stopwords) {
    TfidfModel model(stopwords);
    model.fit(corpus);
    return model;
}

/// Cosine between the tf-idf vectors of two entities, clipped to [0,1]. An
/// entity whose document is empty after stop words scores 0 and is reported.
inline double tfidf_cosine(const TfidfModel& model, const Entity& left, const Entity& right,
                           Diagnostics* diag = nullptr) {
    auto u = model.vectorize(left);
    auto v = model.vectorize(right);
    if (diag) {
        if (u.empty()) diag->warn("tfidf", "empty document for " + left.qualified());
        if (v.empty()) diag->warn("tfidf", "empty document for " + right.qualified());
    }
    double c = sparse_cosine(u, v);
    if (c < 0.0) return 0.0;
    if (c > 1.0) return 1.0;
    return c;
}

}  // namespace facmatch
