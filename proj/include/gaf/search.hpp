#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaf/lexicon.hpp"
#include "gaf/similarity.hpp"

namespace gaf {

// One ranked result. rank is 1-based and contiguous within a result list.
struct SearchHit {
    std::string location;
    std::string title;
    std::string snippet;
    std::string engine;
    int rank = 0;

    bool operator==(const SearchHit&) const = default;
};

// retryable: the engine already exhausted its retries on a transport-level
// problem; the caller may treat the query as having returned nothing.
// Non-retryable errors mean the engine answered with something unusable.
struct EngineError : std::runtime_error {
    EngineError(const std::string& message, bool retryable_, std::string query_ = "")
        : std::runtime_error(message), retryable(retryable_), query(std::move(query_)) {}

    bool retryable = false;
    std::string query;
};

class Engine {
public:
    virtual ~Engine() = default;

    virtual std::string name() const = 0;

    // Ordered results, best first, at most `limit`. rank and engine fields
    // are normalized by execute(); implementations may leave them unset.
    virtual std::vector<SearchHit> fetch(const std::string& query_text, int limit) = 0;
};

// Runs one query: truncates to limit, stamps engine name and ranks 1..k.
std::vector<SearchHit> execute(const std::string& query_text, Engine& engine, int limit);

struct CorpusDoc {
    std::string location;
    std::string title;
    std::string body;
};

struct IndexedDoc {
    std::string location;
    std::string title;
    std::string body;
    LemmaList body_lemmas;
    DocVector vector;  // tf-idf over the whole-index stats
};

// Inverted index over a document set. docs are sorted by location; postings
// map each lemma to ascending doc indices; stats back the tf-idf scoring.
struct LocalIndex {
    std::vector<IndexedDoc> docs;
    std::map<std::string, std::vector<int>> postings;
    TermStats stats;
};

// Builds the index from in-memory documents. Duplicate locations are errors.
LocalIndex build_index(std::vector<CorpusDoc> docs, const Lexicon& lexicon);

// Reads every regular file under root (recursively): first line is the
// title, the rest is the body, the relative path is the location.
LocalIndex index_corpus(const std::string& root, const Lexicon& lexicon);

struct ScoredHit {
    SearchHit hit;
    double score = 0.0;
};

// OR retrieval: candidates share at least one query lemma, scored by cosine
// between query and document tf-idf vectors, ordered by (score desc,
// location asc). Snippets are the first 200 characters of the body.
std::vector<ScoredHit> rank_local_scored(const LemmaList& query_lemmas, const LocalIndex& index,
                                         int limit);
std::vector<SearchHit> rank_local(const LemmaList& query_lemmas, const LocalIndex& index, int limit);

class LocalEngine : public Engine {
public:
    LocalEngine(const LocalIndex& index, const Lexicon& lexicon)
        : index_(index), lexicon_(lexicon) {}

    std::string name() const override { return "local"; }
    std::vector<SearchHit> fetch(const std::string& query_text, int limit) override;

private:
    const LocalIndex& index_;
    const Lexicon& lexicon_;
};

}  // namespace gaf
