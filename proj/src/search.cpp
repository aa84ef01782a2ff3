#include "gaf/search.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace gaf {
namespace {

// First 200 characters of the body, without cutting a UTF-8 sequence.
std::string MakeSnippet(const std::string& body) {
    constexpr std::size_t kSnippetLength = 200;
    if (body.size() <= kSnippetLength) {
        return body;
    }
    std::size_t end = kSnippetLength;
    while (end > 0 && (static_cast<unsigned char>(body[end]) & 0xC0) == 0x80) {
        --end;  // do not split a multi-byte character
    }
    return body.substr(0, end);
}

}  // namespace

std::vector<SearchHit> execute(const std::string& query_text, Engine& engine, int limit) {
    if (limit < 1) {
        throw std::invalid_argument("execute: limit must be >= 1");
    }
    std::vector<SearchHit> hits = engine.fetch(query_text, limit);
    if (hits.size() > static_cast<std::size_t>(limit)) {
        hits.resize(static_cast<std::size_t>(limit));
    }
    const std::string engine_name = engine.name();
    for (std::size_t i = 0; i < hits.size(); ++i) {
        hits[i].engine = engine_name;
        hits[i].rank = static_cast<int>(i) + 1;
    }
    return hits;
}

LocalIndex build_index(std::vector<CorpusDoc> docs, const Lexicon& lexicon) {
    std::sort(docs.begin(), docs.end(),
              [](const CorpusDoc& a, const CorpusDoc& b) { return a.location < b.location; });
    for (std::size_t i = 1; i < docs.size(); ++i) {
        if (docs[i].location == docs[i - 1].location) {
            throw std::invalid_argument("build_index: duplicate document id '" + docs[i].location + "'");
        }
    }

    LocalIndex index;
    index.docs.reserve(docs.size());
    std::vector<LemmaList> corpus;
    corpus.reserve(docs.size());
    for (CorpusDoc& doc : docs) {
        IndexedDoc indexed;
        indexed.location = std::move(doc.location);
        indexed.title = std::move(doc.title);
        indexed.body = std::move(doc.body);
        indexed.body_lemmas = lexicon.lemmatize(indexed.title + " " + indexed.body);
        corpus.push_back(indexed.body_lemmas);
        index.docs.push_back(std::move(indexed));
    }

    if (!index.docs.empty()) {
        index.stats = build_term_stats(corpus);
        for (std::size_t i = 0; i < index.docs.size(); ++i) {
            index.docs[i].vector = tf_idf_vector(index.docs[i].body_lemmas, index.stats);
            const std::set<std::string> unique(index.docs[i].body_lemmas.begin(),
                                               index.docs[i].body_lemmas.end());
            for (const std::string& lemma : unique) {
                index.postings[lemma].push_back(static_cast<int>(i));
            }
        }
    }
    return index;
}

LocalIndex index_corpus(const std::string& root, const Lexicon& lexicon) {
    namespace fs = std::filesystem;
    const fs::path base(root);
    if (!fs::exists(base) || !fs::is_directory(base)) {
        throw std::invalid_argument("index_corpus: not a directory: " + root);
    }

    std::vector<CorpusDoc> docs;
    for (const fs::directory_entry& entry : fs::recursive_directory_iterator(base)) {
        if (!entry.is_regular_file()) {
            continue;
        }
        std::ifstream in(entry.path());
        if (!in) {
            throw std::runtime_error("index_corpus: cannot read " + entry.path().string());
        }
        CorpusDoc doc;
        doc.location = fs::relative(entry.path(), base).generic_string();
        std::getline(in, doc.title);
        std::string line;
        while (std::getline(in, line)) {
            if (!doc.body.empty()) {
                doc.body += ' ';
            }
            doc.body += line;
        }
        docs.push_back(std::move(doc));
    }
    return build_index(std::move(docs), lexicon);
}

std::vector<ScoredHit> rank_local_scored(const LemmaList& query_lemmas, const LocalIndex& index,
                                         int limit) {
    if (limit < 1) {
        throw std::invalid_argument("rank_local: limit must be >= 1");
    }
    const DocVector query_vector = tf_idf_vector(query_lemmas, index.stats);

    std::set<int> candidates;
    std::set<std::string> unique(query_lemmas.begin(), query_lemmas.end());
    for (const std::string& lemma : unique) {
        const auto postings = index.postings.find(lemma);
        if (postings == index.postings.end()) {
            continue;
        }
        candidates.insert(postings->second.begin(), postings->second.end());
    }

    std::vector<ScoredHit> scored;
    scored.reserve(candidates.size());
    for (const int doc_id : candidates) {
        const IndexedDoc& doc = index.docs[static_cast<std::size_t>(doc_id)];
        ScoredHit entry;
        entry.score = cosine(query_vector, doc.vector);
        entry.hit.location = doc.location;
        entry.hit.title = doc.title;
        entry.hit.snippet = MakeSnippet(doc.body);
        entry.hit.engine = "local";
        scored.push_back(std::move(entry));
    }
    std::sort(scored.begin(), scored.end(), [](const ScoredHit& a, const ScoredHit& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.hit.location < b.hit.location;
    });
    if (scored.size() > static_cast<std::size_t>(limit)) {
        scored.resize(static_cast<std::size_t>(limit));
    }
    for (std::size_t i = 0; i < scored.size(); ++i) {
        scored[i].hit.rank = static_cast<int>(i) + 1;
    }
    return scored;
}

std::vector<SearchHit> rank_local(const LemmaList& query_lemmas, const LocalIndex& index, int limit) {
    std::vector<SearchHit> hits;
    for (ScoredHit& scored : rank_local_scored(query_lemmas, index, limit)) {
        hits.push_back(std::move(scored.hit));
    }
    return hits;
}

std::vector<SearchHit> LocalEngine::fetch(const std::string& query_text, int limit) {
    return rank_local(lexicon_.lemmatize(query_text), index_, limit);
}

}  // namespace gaf
