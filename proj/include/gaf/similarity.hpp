#pragma once

#include <map>
#include <span>
#include <string>

#include "gaf/lexicon.hpp"

namespace gaf {

struct SimilarityOptions {
    // Base of the idf logarithm; 0 means the natural logarithm. Cosine values
    // are invariant to this choice, it only rescales the vectors.
    double log_base = 0.0;
};

// Corpus-level counts backing idf: P documents, P_t of them containing each
// term. Terms absent from the map have P_t = 0 and no defined idf.
struct TermStats {
    int doc_count = 0;
    std::map<std::string, int> doc_freq;
};

// Sparse tf-idf vector; zero coordinates are omitted.
struct DocVector {
    std::map<std::string, double> weights;

    bool operator==(const DocVector&) const = default;
};

// Counts over a non-empty corpus of lemmatized documents.
TermStats build_term_stats(std::span<const LemmaList> corpus);

// log((P + 1) / P_t); requires 1 <= P_t <= P.
double idf(int doc_count, int term_doc_count, const SimilarityOptions& opts = {});

// Raw term count times idf for every document term known to stats; terms
// outside the stats vocabulary are skipped.
DocVector tf_idf_vector(const LemmaList& doc, const TermStats& stats,
                        const SimilarityOptions& opts = {});

// Cosine of two sparse vectors; 0 when either has no weights.
double cosine(const DocVector& a, const DocVector& b);

// Convenience pipeline: stats over the corpus, then cosine of the two
// vectors. The corpus must already include pattern and doc if they are meant
// to contribute to document frequencies.
double similarity(const LemmaList& pattern, const LemmaList& doc,
                  std::span<const LemmaList> corpus, const SimilarityOptions& opts = {});

}  // namespace gaf
