#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaf {

using LemmaList = std::vector<std::string>;

struct LexiconError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Suffix-strip fallback used when the lemma dictionary has no entry.
// min_stem is the shortest prefix allowed to remain before the suffix.
struct StemRule {
    std::string suffix;
    std::string replacement;
    std::size_t min_stem = 0;
};

struct LexiconPaths {
    std::string lemmas;     // TSV, one "surface<TAB>lemma" per line
    std::string synonyms;   // one comma-separated group of lemmas per line
    std::string stopwords;  // one lemma per line, merged with the builtin list
};

// Dictionary bundle: surface -> lemma map, disjoint synonym groups, stopwords
// and ordered stem rules. All lookups are read-only; the add_* mutators
// enforce the dictionary invariants and are what the file loaders call.
class Lexicon {
public:
    // No dictionaries at all, not even stopwords. Mostly for tests.
    static Lexicon empty();

    // English stopword list plus a small set of suffix rules.
    static Lexicon builtin_english();

    // builtin_english() extended with the given files; empty paths are skipped.
    static Lexicon load(const LexiconPaths& paths);

    // Lemma for one token, nullopt when it resolves to a stopword.
    std::optional<std::string> normalize(const std::string& token) const;

    // tokenize + normalize, stopwords dropped.
    LemmaList lemmatize(const std::string& text) const;

    // The lemma's synonym group without the lemma itself; empty when ungrouped.
    std::set<std::string> synonyms_of(const std::string& lemma) const;

    bool is_stopword(const std::string& lemma) const { return stopwords_.count(lemma) > 0; }

    // Rejects chains: every mapped lemma must itself map to itself or nowhere.
    void add_lemma(const std::string& surface, const std::string& lemma);
    // Rejects overlap with any existing group.
    void add_synonym_group(const std::vector<std::string>& group);
    void add_stopword(const std::string& word);
    void set_stem_rules(std::vector<StemRule> rules) { stem_rules_ = std::move(rules); }

    const std::map<std::string, std::string>& lemma_map() const { return lemma_map_; }
    const std::vector<std::set<std::string>>& synonym_groups() const { return synonym_groups_; }
    const std::set<std::string>& stopwords() const { return stopwords_; }

private:
    std::string apply_stem_rules(const std::string& token) const;
    void check_no_stopword_in_groups() const;

    std::map<std::string, std::string> lemma_map_;
    std::set<std::string> lemma_values_;
    std::vector<std::set<std::string>> synonym_groups_;
    std::map<std::string, std::size_t> group_of_;
    std::set<std::string> stopwords_;
    std::vector<StemRule> stem_rules_;
};

// Case-folds and splits on anything that is not a letter or digit. ASCII,
// Latin-1 and Cyrillic letters are folded to lowercase; letters of other
// scripts pass through unchanged.
std::vector<std::string> tokenize(const std::string& text);

// Lowercase a string with the same folding rules tokenize applies.
std::string fold_case(const std::string& text);

// One keyword-pool concept: the canonical lemma key (single- or multi-word,
// space-joined) plus the surface form used when the concept appears in a
// query string.
struct Gene {
    std::string lemma;
    std::string surface;

    bool operator==(const Gene&) const = default;
    auto operator<=>(const Gene&) const = default;
};

// One concept per line; '#' comments and blank lines are skipped. Lines that
// lemmatize to nothing and duplicated lemma keys are hard errors.
std::vector<Gene> load_keyword_pool(const std::string& path, const Lexicon& lexicon);

}  // namespace gaf
