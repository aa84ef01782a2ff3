#include "gaf/similarity.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace gaf {

TermStats build_term_stats(std::span<const LemmaList> corpus) {
    if (corpus.empty()) {
        throw std::invalid_argument("build_term_stats: empty corpus");
    }
    TermStats stats;
    stats.doc_count = static_cast<int>(corpus.size());
    for (const LemmaList& doc : corpus) {
        const std::set<std::string> unique(doc.begin(), doc.end());
        for (const std::string& term : unique) {
            ++stats.doc_freq[term];
        }
    }
    return stats;
}

double idf(int doc_count, int term_doc_count, const SimilarityOptions& opts) {
    if (doc_count < 1 || term_doc_count < 1 || term_doc_count > doc_count) {
        throw std::invalid_argument("idf: need 1 <= term_doc_count <= doc_count");
    }
    const double ratio = (static_cast<double>(doc_count) + 1.0) / static_cast<double>(term_doc_count);
    const double value = std::log(ratio);
    if (opts.log_base > 0.0) {
        return value / std::log(opts.log_base);
    }
    return value;
}

DocVector tf_idf_vector(const LemmaList& doc, const TermStats& stats, const SimilarityOptions& opts) {
    std::map<std::string, int> counts;
    for (const std::string& term : doc) {
        ++counts[term];
    }
    DocVector vector;
    for (const auto& [term, count] : counts) {
        const auto freq = stats.doc_freq.find(term);
        if (freq == stats.doc_freq.end()) {
            continue;  // unknown to the corpus, no defined idf
        }
        vector.weights.emplace(term, static_cast<double>(count) * idf(stats.doc_count, freq->second, opts));
    }
    return vector;
}

double cosine(const DocVector& a, const DocVector& b) {
    double dot = 0.0;
    for (const auto& [term, weight] : a.weights) {
        const auto other = b.weights.find(term);
        if (other != b.weights.end()) {
            dot += weight * other->second;
        }
    }
    if (dot == 0.0) {
        // covers empty vectors and empty overlap; all weights are positive
        return 0.0;
    }
    double norm_a = 0.0;
    for (const auto& [term, weight] : a.weights) {
        norm_a += weight * weight;
    }
    double norm_b = 0.0;
    for (const auto& [term, weight] : b.weights) {
        norm_b += weight * weight;
    }
    return dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

double similarity(const LemmaList& pattern, const LemmaList& doc,
                  std::span<const LemmaList> corpus, const SimilarityOptions& opts) {
    const TermStats stats = build_term_stats(corpus);
    return cosine(tf_idf_vector(pattern, stats, opts), tf_idf_vector(doc, stats, opts));
}

}  // namespace gaf
