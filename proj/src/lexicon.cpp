#include "gaf/lexicon.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace gaf {
namespace {

std::string Trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

// Decodes one UTF-8 codepoint at position i, advancing i. Malformed bytes
// decode to U+FFFD one byte at a time so bad input degrades to separators.
std::uint32_t DecodeUtf8(const std::string& text, std::size_t& i) {
    const auto byte = [&text](std::size_t at) { return static_cast<unsigned char>(text[at]); };
    const unsigned char lead = byte(i);
    if (lead < 0x80) {
        ++i;
        return lead;
    }
    int extra = 0;
    std::uint32_t cp = 0;
    if ((lead & 0xE0) == 0xC0) {
        extra = 1;
        cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
        extra = 2;
        cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
        extra = 3;
        cp = lead & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + static_cast<std::size_t>(extra) >= text.size()) {
        ++i;
        return 0xFFFD;  // truncated sequence
    }
    std::uint32_t decoded = cp;
    for (int k = 1; k <= extra; ++k) {
        const unsigned char cont = byte(i + k);
        if ((cont & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        decoded = (decoded << 6) | (cont & 0x3F);
    }
    i += 1 + extra;
    return decoded;
}

void AppendUtf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Lowercases a word codepoint, or returns 0 for separators. ASCII, Latin-1,
// Latin Extended-A, Greek and Cyrillic get real case folding; other scripts
// count as letters and pass through.
std::uint32_t FoldWordChar(std::uint32_t cp) {
    if (cp < 0x80) {
        if (std::isalnum(static_cast<int>(cp))) {
            return static_cast<std::uint32_t>(std::tolower(static_cast<int>(cp)));
        }
        return 0;
    }
    if (cp <= 0x9F || (cp >= 0xA0 && cp <= 0xBF) || cp == 0xD7 || cp == 0xF7) {
        return 0;  // C1 controls, Latin-1 punctuation, multiply/divide signs
    }
    if (cp >= 0xC0 && cp <= 0xDE) {
        return cp + 0x20;  // Latin-1 uppercase
    }
    if (cp <= 0xFF) {
        return cp;  // Latin-1 lowercase
    }
    if (cp >= 0x100 && cp <= 0x177) {
        if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) {
            return (cp % 2 == 0) ? cp + 1 : cp;
        }
        return (cp % 2 == 1) ? cp + 1 : cp;  // 0x138-0x148 odd uppercase pairs
    }
    if (cp == 0x178) {
        return 0xFF;
    }
    if (cp >= 0x179 && cp <= 0x17E) {
        return (cp % 2 == 1) ? cp + 1 : cp;
    }
    if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) {
        return cp + 0x20;  // Greek uppercase
    }
    if (cp >= 0x400 && cp <= 0x40F) {
        return cp + 0x50;  // Cyrillic Ѐ-Џ
    }
    if (cp >= 0x410 && cp <= 0x42F) {
        return cp + 0x20;  // Cyrillic А-Я
    }
    if (cp >= 0x460 && cp <= 0x4FF) {
        return (cp % 2 == 0) ? cp + 1 : cp;  // Cyrillic extended pairs
    }
    if ((cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x2E00 && cp <= 0x2E7F)) {
        return 0;  // general and supplemental punctuation
    }
    if (cp == 0xFFFD) {
        return 0;
    }
    return cp;
}

constexpr std::array<const char*, 48> kBuiltinStopwords = {
    "a",    "an",   "and",  "are",  "as",    "at",    "be",   "but",  "by",   "for",
    "from", "has",  "have", "he",   "her",   "his",   "if",   "in",   "into", "is",
    "it",   "its",  "no",   "not",  "of",    "on",    "or",   "she",  "so",   "than",
    "that", "the",  "their", "them", "then", "there", "these", "they", "this", "to",
    "was",  "were", "which", "will", "with", "would", "you",  "your"};

std::vector<StemRule> BuiltinStemRules() {
    return {
        {"sses", "ss", 1},
        {"ies", "y", 2},
        {"ss", "ss", 1},
        {"ing", "", 3},
        {"ied", "y", 2},
        {"ed", "", 3},
        {"es", "", 3},
        {"s", "", 3},
    };
}

std::string JoinLemmas(const LemmaList& lemmas) {
    std::string joined;
    for (const std::string& lemma : lemmas) {
        if (!joined.empty()) {
            joined += ' ';
        }
        joined += lemma;
    }
    return joined;
}

std::vector<std::string> ReadLines(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw LexiconError("cannot open dictionary file: " + path);
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    return lines;
}

// Strips comments and whitespace; empty result means "skip this line".
std::string CleanLine(std::string line) {
    const auto comment = line.find('#');
    if (comment != std::string::npos) {
        line.erase(comment);
    }
    return Trim(line);
}

[[noreturn]] void FailAt(const std::string& path, std::size_t line, const std::string& message) {
    throw LexiconError(path + ":" + std::to_string(line + 1) + ": " + message);
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t i = 0;
    while (i < text.size()) {
        const std::uint32_t cp = DecodeUtf8(text, i);
        const std::uint32_t folded = FoldWordChar(cp);
        if (folded == 0) {
            if (!current.empty()) {
                tokens.push_back(current);
                current.clear();
            }
        } else {
            AppendUtf8(current, folded);
        }
    }
    if (!current.empty()) {
        tokens.push_back(current);
    }
    return tokens;
}

std::string fold_case(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const std::size_t before = i;
        const std::uint32_t cp = DecodeUtf8(text, i);
        const std::uint32_t folded = FoldWordChar(cp);
        if (folded == 0) {
            out.append(text, before, i - before);
        } else {
            AppendUtf8(out, folded);
        }
    }
    return out;
}

Lexicon Lexicon::empty() {
    return Lexicon{};
}

Lexicon Lexicon::builtin_english() {
    return load(LexiconPaths{});
}

Lexicon Lexicon::load(const LexiconPaths& paths) {
    Lexicon lexicon;
    lexicon.set_stem_rules(BuiltinStemRules());

    if (!paths.lemmas.empty()) {
        const std::vector<std::string> lines = ReadLines(paths.lemmas);
        for (std::size_t n = 0; n < lines.size(); ++n) {
            const std::string line = CleanLine(lines[n]);
            if (line.empty()) {
                continue;
            }
            const auto tab = line.find('\t');
            if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
                FailAt(paths.lemmas, n, "expected 'surface<TAB>lemma'");
            }
            const std::vector<std::string> surface = tokenize(line.substr(0, tab));
            const std::vector<std::string> lemma = tokenize(line.substr(tab + 1));
            if (surface.size() != 1 || lemma.size() != 1) {
                FailAt(paths.lemmas, n, "surface and lemma must each be a single token");
            }
            try {
                lexicon.add_lemma(surface[0], lemma[0]);
            } catch (const LexiconError& error) {
                FailAt(paths.lemmas, n, error.what());
            }
        }
    }

    if (!paths.synonyms.empty()) {
        const std::vector<std::string> lines = ReadLines(paths.synonyms);
        for (std::size_t n = 0; n < lines.size(); ++n) {
            const std::string line = CleanLine(lines[n]);
            if (line.empty()) {
                continue;
            }
            std::vector<std::string> group;
            std::stringstream items(line);
            std::string item;
            while (std::getline(items, item, ',')) {
                const std::vector<std::string> tokens = tokenize(item);
                if (tokens.empty()) {
                    FailAt(paths.synonyms, n, "empty synonym entry");
                }
                group.push_back(JoinLemmas(tokens));
            }
            try {
                lexicon.add_synonym_group(group);
            } catch (const LexiconError& error) {
                FailAt(paths.synonyms, n, error.what());
            }
        }
    }

    for (const char* word : kBuiltinStopwords) {
        lexicon.add_stopword(word);
    }
    if (!paths.stopwords.empty()) {
        const std::vector<std::string> lines = ReadLines(paths.stopwords);
        for (std::size_t n = 0; n < lines.size(); ++n) {
            const std::string line = CleanLine(lines[n]);
            if (line.empty()) {
                continue;
            }
            const std::vector<std::string> tokens = tokenize(line);
            if (tokens.size() != 1) {
                FailAt(paths.stopwords, n, "expected a single stopword per line");
            }
            try {
                lexicon.add_stopword(tokens[0]);
            } catch (const LexiconError& error) {
                FailAt(paths.stopwords, n, error.what());
            }
        }
    }
    return lexicon;
}

void Lexicon::add_lemma(const std::string& surface, const std::string& lemma) {
    const auto existing = lemma_map_.find(surface);
    if (existing != lemma_map_.end()) {
        if (existing->second != lemma) {
            throw LexiconError("conflicting lemma for '" + surface + "'");
        }
        return;
    }
    // A mapped lemma must be a fixed point: no entry that sends it elsewhere.
    const auto target = lemma_map_.find(lemma);
    if (target != lemma_map_.end() && target->second != lemma) {
        throw LexiconError("lemma chain at '" + lemma + "'");
    }
    if (surface != lemma && lemma_values_.count(surface) > 0) {
        throw LexiconError("lemma chain at '" + surface + "'");
    }
    lemma_map_.emplace(surface, lemma);
    lemma_values_.insert(lemma);
}

void Lexicon::add_synonym_group(const std::vector<std::string>& group) {
    std::set<std::string> members(group.begin(), group.end());
    if (members.size() < 2) {
        throw LexiconError("synonym group needs at least 2 distinct lemmas");
    }
    for (const std::string& member : members) {
        if (group_of_.count(member) > 0) {
            throw LexiconError("lemma '" + member + "' appears in two synonym groups");
        }
        if (stopwords_.count(member) > 0) {
            throw LexiconError("stopword '" + member + "' inside a synonym group");
        }
    }
    const std::size_t index = synonym_groups_.size();
    for (const std::string& member : members) {
        group_of_.emplace(member, index);
    }
    synonym_groups_.push_back(std::move(members));
}

void Lexicon::add_stopword(const std::string& word) {
    if (group_of_.count(word) > 0) {
        throw LexiconError("stopword '" + word + "' inside a synonym group");
    }
    stopwords_.insert(word);
    // Identity entry so stem rules never rewrite a stopword before the
    // stopword check. An explicit dictionary entry keeps priority.
    if (lemma_map_.count(word) == 0 && lemma_values_.count(word) == 0) {
        lemma_map_.emplace(word, word);
        lemma_values_.insert(word);
    }
}

std::string Lexicon::apply_stem_rules(const std::string& token) const {
    std::string current = token;
    for (int pass = 0; pass < 16; ++pass) {
        bool rewritten = false;
        for (const StemRule& rule : stem_rules_) {
            if (current.size() < rule.suffix.size() + rule.min_stem) {
                continue;
            }
            if (current.compare(current.size() - rule.suffix.size(), rule.suffix.size(), rule.suffix) != 0) {
                continue;
            }
            std::string next = current.substr(0, current.size() - rule.suffix.size());
            next += rule.replacement;
            if (next == current) {
                return current;  // identity rule, fixed point reached
            }
            current = std::move(next);
            rewritten = true;
            break;
        }
        if (!rewritten) {
            break;
        }
    }
    return current;
}

std::optional<std::string> Lexicon::normalize(const std::string& token) const {
    std::string lemma;
    const auto hit = lemma_map_.find(token);
    if (hit != lemma_map_.end()) {
        lemma = hit->second;
    } else {
        lemma = apply_stem_rules(token);
    }
    if (stopwords_.count(lemma) > 0) {
        return std::nullopt;
    }
    return lemma;
}

LemmaList Lexicon::lemmatize(const std::string& text) const {
    LemmaList lemmas;
    for (const std::string& token : tokenize(text)) {
        if (auto lemma = normalize(token)) {
            lemmas.push_back(std::move(*lemma));
        }
    }
    return lemmas;
}

std::set<std::string> Lexicon::synonyms_of(const std::string& lemma) const {
    const auto at = group_of_.find(lemma);
    if (at == group_of_.end()) {
        return {};
    }
    std::set<std::string> group = synonym_groups_[at->second];
    group.erase(lemma);
    return group;
}

std::vector<Gene> load_keyword_pool(const std::string& path, const Lexicon& lexicon) {
    std::ifstream in(path);
    if (!in) {
        throw LexiconError("cannot open keyword pool file: " + path);
    }
    std::vector<std::string> lines;
    std::string raw;
    while (std::getline(in, raw)) {
        lines.push_back(raw);
    }

    std::vector<Gene> pool;
    std::set<std::string> seen;
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const std::string line = CleanLine(lines[n]);
        if (line.empty()) {
            continue;
        }
        const LemmaList lemmas = lexicon.lemmatize(line);
        if (lemmas.empty()) {
            FailAt(path, n, "keyword '" + line + "' lemmatizes to nothing");
        }
        const std::string key = JoinLemmas(lemmas);
        if (!seen.insert(key).second) {
            FailAt(path, n, "duplicate keyword lemma '" + key + "'");
        }
        // Collapse internal whitespace runs so query strings stay single-spaced.
        std::string surface;
        for (const char c : line) {
            if (c == ' ' || c == '\t') {
                if (!surface.empty() && surface.back() != ' ') {
                    surface += ' ';
                }
            } else {
                surface += c;
            }
        }
        pool.push_back(Gene{key, surface});
    }
    return pool;
}

}  // namespace gaf
