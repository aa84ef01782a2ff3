#pragma once

#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gaf/config.hpp"
#include "gaf/fitness.hpp"
#include "gaf/lexicon.hpp"
#include "gaf/rng.hpp"
#include "gaf/search.hpp"

namespace gaf {

// A candidate search query: an ordered list of distinct-lemma genes, the
// query string built from their surfaces, the last result list and the
// fitness those results earned.
struct Query {
    std::vector<Gene> genes;
    std::string query_text;
    std::vector<SearchHit> results;
    double fitness = 0.0;

    bool operator==(const Query&) const = default;
};

Query make_query(std::vector<Gene> genes);
std::set<std::string> lemma_set(const Query& query);

struct Population {
    int generation_number = 0;
    std::vector<Query> queries;
    std::vector<Resource> resources;  // (w desc, location asc), capped at f2
    double fitness = 0.0;
    double sigma_fitness = 0.0;

    bool operator==(const Population&) const = default;
};

enum class StopReason { Running, Stability, GenerationTarget, HardCap, Error };

std::string to_string(StopReason reason);
StopReason stop_reason_from_string(const std::string& text);

struct GenerationSummary {
    int generation_number = 0;
    double fitness = 0.0;
    double sigma_fitness = 0.0;
    std::string best_query_text;
    int mutations = 0;

    bool operator==(const GenerationSummary&) const = default;
};

struct RunState {
    Config config;
    std::vector<Gene> keyword_pool;
    Population init_population;
    Population current_population;
    std::vector<GenerationSummary> history;
    std::vector<Resource> all_resources;  // cumulative, deduplicated, capped at f3
    StopReason stop_reason = StopReason::Running;
    std::string error_text;
    Rng rng;
    std::vector<std::string> synonym_lemmas_seen;  // sorted lemmas swapped in from synonym groups

    bool operator==(const RunState&) const = default;
};

// The pattern quasi-document: every pool lemma key flattened to single lemmas.
LemmaList pattern_of(const std::vector<Gene>& pool);

// population_size queries of genes_per_query distinct genes each, sampled
// uniformly without replacement per query. Duplicate queries across the
// population are allowed.
Population create_initial_population(const std::vector<Gene>& pool, const Config& config, Rng& rng);

// Runs every query, aggregates and scores resources, assigns query fitness
// over each query's own retrieved resources, and fills the population
// aggregates. Retryable engine errors downgrade to an empty result list.
void evaluate(Population& population, Engine& engine, const Lexicon& lexicon, const Config& config,
              const LemmaList& pattern);

// Queries with fitness >= c1 * mean fitness, best first; falls back to the
// top 2 when fewer than 2 qualify.
std::vector<Query> select_best(const Population& population, const Config& config);

// 1 - Jaccard index of the two lemma sets.
double genotype_distance(const Query& a, const Query& b);

// Greedy outbreeding: repeatedly pair the best unpaired query with the most
// distant unpaired partner (ties: higher fitness, then earlier position).
// An odd leftover is paired with the most distant already-paired query.
std::vector<std::pair<Query, Query>> select_parent_pairs(const std::vector<Query>& selected);

// Deterministic recombination cores, exposed for tests.
std::pair<Query, Query> crossover_one_point(const Query& a, const Query& b, int cut);
std::pair<Query, Query> crossover_discrete(const Query& a, const Query& b,
                                           const std::vector<bool>& take_first);

// Recombines, swaps genes for synonyms with the configured probability, then
// repairs duplicate lemmas with unused pool genes. Lemmas introduced by
// synonym swaps are appended to *introduced when given.
std::pair<Query, Query> crossover(const std::pair<Query, Query>& parents, const Config& config,
                                  const Lexicon& lexicon, const std::vector<Gene>& pool, Rng& rng,
                                  std::vector<std::string>* introduced = nullptr);

// With probability mutation_prob replaces one uniformly chosen gene by a
// pool gene whose lemma is not in the query; *mutated reports whether a
// replacement happened.
Query mutate(const Query& query, const Config& config, const std::vector<Gene>& pool, Rng& rng,
             bool* mutated = nullptr);

// Captures the joined-evaluation internals of next_generation for tests.
struct JoinedOutcome {
    std::vector<double> fitness;
    std::vector<bool> survived;
};

// Joins parents and children (dropping later duplicates by lemma set), fills
// up to population_size with fresh random queries when the join underflows,
// evaluates the joined set as one population reusing the parents' cached
// results, keeps the top population_size by fitness, and re-scores the
// survivors as the next generation.
Population next_generation(const Population& parents, std::vector<Query> children, Engine& engine,
                           const Lexicon& lexicon, const Config& config, const LemmaList& pattern,
                           const std::vector<Gene>& pool, Rng& rng,
                           JoinedOutcome* joined_outcome = nullptr);

// Stability (sigma <= e2) wins over GenerationTarget (gen >= e1) wins over
// HardCap (gen >= e3); otherwise Running.
StopReason should_stop(const RunState& state, const Config& config);

RunState init_run_state(const Config& config, std::vector<Gene> pool);

// Breeds generations until a terminal stop reason, or until max_steps
// breeding iterations have run (max_steps < 0 means unbounded; the initial
// population does not count as a step). on_generation fires after every
// completed generation, giving the caller its checkpoint/progress hook.
// Non-retryable errors land in stop_reason Error with error_text set.
StopReason advance(RunState& state, Engine& engine, const Lexicon& lexicon, int max_steps = -1,
                   const std::function<void(const RunState&)>& on_generation = {});

RunState run(const Config& config, const Lexicon& lexicon, Engine& engine, std::vector<Gene> pool,
             const std::function<void(const RunState&)>& on_generation = {});

}  // namespace gaf
