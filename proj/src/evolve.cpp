#include "gaf/evolve.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <numeric>
#include <stdexcept>

namespace gaf {
namespace {

// Runs one query, treating exhausted-retry transport failures as an empty
// result list so a flaky engine cannot kill a long run.
std::vector<SearchHit> FetchOrEmpty(const std::string& query_text, Engine& engine, int limit) {
    try {
        return execute(query_text, engine, limit);
    } catch (const EngineError& error) {
        if (!error.retryable) {
            throw;
        }
        std::cerr << "warning: query '" << query_text << "' returned nothing: " << error.what()
                  << "\n";
        return {};
    }
}

// Distinct-gene sample of size genes_per_query via partial Fisher-Yates.
Query RandomQuery(const std::vector<Gene>& pool, int genes_per_query, Rng& rng) {
    std::vector<std::size_t> indices(pool.size());
    std::iota(indices.begin(), indices.end(), 0u);
    std::vector<Gene> genes;
    genes.reserve(static_cast<std::size_t>(genes_per_query));
    for (int j = 0; j < genes_per_query; ++j) {
        const std::size_t pick =
            static_cast<std::size_t>(j) + rng.uniform_index(indices.size() - static_cast<std::size_t>(j));
        std::swap(indices[static_cast<std::size_t>(j)], indices[pick]);
        genes.push_back(pool[indices[static_cast<std::size_t>(j)]]);
    }
    return make_query(std::move(genes));
}

// Aggregates and scores the queries' cached results as one population of
// size |queries| and assigns each query its fitness. Returns the scored,
// (w desc, location asc)-ordered resource list.
std::vector<Resource> ScoreQueries(std::vector<Query>& queries, const Lexicon& lexicon,
                                   const Config& config, const LemmaList& pattern) {
    std::vector<std::vector<SearchHit>> per_query;
    per_query.reserve(queries.size());
    for (const Query& query : queries) {
        per_query.push_back(query.results);
    }
    std::vector<Resource> resources = aggregate_resources(per_query, lexicon);
    score_resources(resources, static_cast<int>(queries.size()), pattern, config);
    for (std::size_t i = 0; i < queries.size(); ++i) {
        queries[i].fitness = query_fitness(per_query_weights(resources, static_cast<int>(i)),
                                           config.aggregation_mode);
    }
    return resources;
}

// Fills the population aggregates from already-fetched results and keeps at
// most max_results_per_population resources.
void FinishPopulation(Population& population, const Lexicon& lexicon, const Config& config,
                      const LemmaList& pattern) {
    std::vector<Resource> resources = ScoreQueries(population.queries, lexicon, config, pattern);
    std::vector<double> fitnesses;
    fitnesses.reserve(population.queries.size());
    for (const Query& query : population.queries) {
        fitnesses.push_back(query.fitness);
    }
    population.fitness = population_fitness(fitnesses, config.aggregation_mode);
    population.sigma_fitness = sigma_fitness(fitnesses);
    if (resources.size() > static_cast<std::size_t>(config.max_results_per_population)) {
        resources.resize(static_cast<std::size_t>(config.max_results_per_population));
    }
    population.resources = std::move(resources);
}

void PushHistory(RunState& state, int mutations) {
    const Population& population = state.current_population;
    GenerationSummary entry;
    entry.generation_number = population.generation_number;
    entry.fitness = population.fitness;
    entry.sigma_fitness = population.sigma_fitness;
    entry.mutations = mutations;
    if (!population.queries.empty()) {
        const Query* best = &population.queries.front();
        for (const Query& query : population.queries) {
            if (query.fitness > best->fitness) {
                best = &query;
            }
        }
        entry.best_query_text = best->query_text;
    }
    state.history.push_back(std::move(entry));
}

// Folds the generation's resources into the cumulative list: dedup by
// location keeping the higher-w sighting, then (w desc, location asc) order
// capped at max_results_total.
void MergeAllResources(RunState& state) {
    std::map<std::string, std::size_t> index_of;
    for (std::size_t i = 0; i < state.all_resources.size(); ++i) {
        index_of.emplace(state.all_resources[i].location, i);
    }
    for (const Resource& resource : state.current_population.resources) {
        const auto found = index_of.find(resource.location);
        if (found == index_of.end()) {
            index_of.emplace(resource.location, state.all_resources.size());
            state.all_resources.push_back(resource);
        } else if (resource.attrs.w > state.all_resources[found->second].attrs.w) {
            state.all_resources[found->second] = resource;
        }
    }
    std::sort(state.all_resources.begin(), state.all_resources.end(),
              [](const Resource& a, const Resource& b) {
                  if (a.attrs.w != b.attrs.w) {
                      return a.attrs.w > b.attrs.w;
                  }
                  return a.location < b.location;
              });
    if (state.all_resources.size() > static_cast<std::size_t>(state.config.max_results_total)) {
        state.all_resources.resize(static_cast<std::size_t>(state.config.max_results_total));
    }
}

void RecordIntroducedLemmas(RunState& state, const std::vector<std::string>& introduced) {
    if (introduced.empty()) {
        return;
    }
    std::vector<std::string>& seen = state.synonym_lemmas_seen;
    seen.insert(seen.end(), introduced.begin(), introduced.end());
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
}

}  // namespace

Query make_query(std::vector<Gene> genes) {
    Query query;
    query.genes = std::move(genes);
    for (const Gene& gene : query.genes) {
        if (!query.query_text.empty()) {
            query.query_text += ' ';
        }
        query.query_text += gene.surface;
    }
    return query;
}

std::set<std::string> lemma_set(const Query& query) {
    std::set<std::string> lemmas;
    for (const Gene& gene : query.genes) {
        lemmas.insert(gene.lemma);
    }
    return lemmas;
}

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::Running: return "Running";
        case StopReason::Stability: return "Stability";
        case StopReason::GenerationTarget: return "GenerationTarget";
        case StopReason::HardCap: return "HardCap";
        case StopReason::Error: return "Error";
    }
    return "Running";
}

StopReason stop_reason_from_string(const std::string& text) {
    if (text == "Running") return StopReason::Running;
    if (text == "Stability") return StopReason::Stability;
    if (text == "GenerationTarget") return StopReason::GenerationTarget;
    if (text == "HardCap") return StopReason::HardCap;
    if (text == "Error") return StopReason::Error;
    throw std::invalid_argument("unknown stop reason '" + text + "'");
}

LemmaList pattern_of(const std::vector<Gene>& pool) {
    LemmaList pattern;
    for (const Gene& gene : pool) {
        std::string current;
        for (const char c : gene.lemma) {
            if (c == ' ') {
                if (!current.empty()) {
                    pattern.push_back(current);
                    current.clear();
                }
            } else {
                current += c;
            }
        }
        if (!current.empty()) {
            pattern.push_back(current);
        }
    }
    return pattern;
}

Population create_initial_population(const std::vector<Gene>& pool, const Config& config, Rng& rng) {
    if (pool.size() < static_cast<std::size_t>(config.genes_per_query)) {
        throw std::invalid_argument("keyword pool has " + std::to_string(pool.size()) +
                                    " concepts but genes_per_query (g3) is " +
                                    std::to_string(config.genes_per_query));
    }
    Population population;
    population.generation_number = 0;
    population.queries.reserve(static_cast<std::size_t>(config.population_size));
    for (int i = 0; i < config.population_size; ++i) {
        population.queries.push_back(RandomQuery(pool, config.genes_per_query, rng));
    }
    return population;
}

void evaluate(Population& population, Engine& engine, const Lexicon& lexicon, const Config& config,
              const LemmaList& pattern) {
    for (Query& query : population.queries) {
        query.results = FetchOrEmpty(query.query_text, engine, config.results_per_query);
    }
    FinishPopulation(population, lexicon, config, pattern);
}

std::vector<Query> select_best(const Population& population, const Config& config) {
    std::vector<double> fitnesses;
    fitnesses.reserve(population.queries.size());
    for (const Query& query : population.queries) {
        fitnesses.push_back(query.fitness);
    }
    double mean = 0.0;
    for (const double fitness : fitnesses) {
        mean += fitness;
    }
    if (!fitnesses.empty()) {
        mean /= static_cast<double>(fitnesses.size());
    }
    const double threshold = config.parent_criterion_mult * mean;

    std::vector<std::size_t> order(population.queries.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&population](std::size_t a, std::size_t b) {
        return population.queries[a].fitness > population.queries[b].fitness;
    });

    std::vector<Query> selected;
    for (const std::size_t index : order) {
        if (population.queries[index].fitness >= threshold) {
            selected.push_back(population.queries[index]);
        }
    }
    if (selected.size() < 2) {
        selected.clear();
        for (std::size_t i = 0; i < order.size() && i < 2; ++i) {
            selected.push_back(population.queries[order[i]]);
        }
    }
    return selected;
}

double genotype_distance(const Query& a, const Query& b) {
    const std::set<std::string> set_a = lemma_set(a);
    const std::set<std::string> set_b = lemma_set(b);
    std::size_t intersection = 0;
    for (const std::string& lemma : set_a) {
        intersection += set_b.count(lemma);
    }
    const std::size_t unions = set_a.size() + set_b.size() - intersection;
    if (unions == 0) {
        return 0.0;
    }
    return 1.0 - static_cast<double>(intersection) / static_cast<double>(unions);
}

std::vector<std::pair<Query, Query>> select_parent_pairs(const std::vector<Query>& selected) {
    if (selected.size() < 2) {
        throw std::invalid_argument("select_parent_pairs: need at least 2 queries");
    }
    std::vector<std::size_t> unpaired(selected.size());
    std::iota(unpaired.begin(), unpaired.end(), 0u);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    while (unpaired.size() >= 2) {
        const std::size_t anchor = unpaired.front();
        unpaired.erase(unpaired.begin());
        std::size_t best_pos = 0;
        double best_dist = genotype_distance(selected[anchor], selected[unpaired[0]]);
        for (std::size_t pos = 1; pos < unpaired.size(); ++pos) {
            const double dist = genotype_distance(selected[anchor], selected[unpaired[pos]]);
            const double fitness = selected[unpaired[pos]].fitness;
            const double best_fitness = selected[unpaired[best_pos]].fitness;
            if (dist > best_dist || (dist == best_dist && fitness > best_fitness)) {
                best_pos = pos;
                best_dist = dist;
            }
        }
        pairs.emplace_back(anchor, unpaired[best_pos]);
        unpaired.erase(unpaired.begin() + static_cast<std::ptrdiff_t>(best_pos));
    }

    if (!unpaired.empty()) {
        // Odd leftover: partner it with the most distant already-paired query.
        const std::size_t leftover = unpaired.front();
        std::vector<std::size_t> candidates;
        for (const auto& [first, second] : pairs) {
            candidates.push_back(first);
            candidates.push_back(second);
        }
        std::size_t best = candidates.front();
        double best_dist = genotype_distance(selected[leftover], selected[best]);
        for (std::size_t pos = 1; pos < candidates.size(); ++pos) {
            const double dist = genotype_distance(selected[leftover], selected[candidates[pos]]);
            if (dist > best_dist ||
                (dist == best_dist && selected[candidates[pos]].fitness > selected[best].fitness)) {
                best = candidates[pos];
                best_dist = dist;
            }
        }
        pairs.emplace_back(leftover, best);
    }

    std::vector<std::pair<Query, Query>> result;
    result.reserve(pairs.size());
    for (const auto& [first, second] : pairs) {
        result.emplace_back(selected[first], selected[second]);
    }
    return result;
}

std::pair<Query, Query> crossover_one_point(const Query& a, const Query& b, int cut) {
    const std::size_t n = a.genes.size();
    if (b.genes.size() != n) {
        throw std::invalid_argument("crossover_one_point: parents of different lengths");
    }
    if (cut < 1 || static_cast<std::size_t>(cut) >= n) {
        throw std::invalid_argument("crossover_one_point: cut outside [1, n-1]");
    }
    std::vector<Gene> first;
    std::vector<Gene> second;
    for (std::size_t i = 0; i < n; ++i) {
        if (i < static_cast<std::size_t>(cut)) {
            first.push_back(a.genes[i]);
            second.push_back(b.genes[i]);
        } else {
            first.push_back(b.genes[i]);
            second.push_back(a.genes[i]);
        }
    }
    return {make_query(std::move(first)), make_query(std::move(second))};
}

std::pair<Query, Query> crossover_discrete(const Query& a, const Query& b,
                                           const std::vector<bool>& take_first) {
    const std::size_t n = a.genes.size();
    if (b.genes.size() != n || take_first.size() != n) {
        throw std::invalid_argument("crossover_discrete: size mismatch");
    }
    std::vector<Gene> first;
    std::vector<Gene> second;
    for (std::size_t i = 0; i < n; ++i) {
        if (take_first[i]) {
            first.push_back(a.genes[i]);
            second.push_back(b.genes[i]);
        } else {
            first.push_back(b.genes[i]);
            second.push_back(a.genes[i]);
        }
    }
    return {make_query(std::move(first)), make_query(std::move(second))};
}

namespace {

// Synonym pass then duplicate repair, in gene order; both consume rng draws
// only on the paths that need them so runs stay reproducible.
void PolishChild(Query& child, const Config& config, const Lexicon& lexicon,
                 const std::vector<Gene>& pool, Rng& rng, std::vector<std::string>* introduced) {
    for (Gene& gene : child.genes) {
        if (!rng.bernoulli(config.synonym_swap_prob)) {
            continue;
        }
        const std::set<std::string> synonyms = lexicon.synonyms_of(gene.lemma);
        if (synonyms.empty()) {
            continue;
        }
        auto pick = synonyms.begin();
        std::advance(pick, static_cast<std::ptrdiff_t>(rng.uniform_index(synonyms.size())));
        gene = Gene{*pick, *pick};
        if (introduced != nullptr) {
            introduced->push_back(*pick);
        }
    }

    for (std::size_t i = 0; i < child.genes.size(); ++i) {
        bool duplicate = false;
        for (std::size_t earlier = 0; earlier < i; ++earlier) {
            if (child.genes[earlier].lemma == child.genes[i].lemma) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) {
            continue;
        }
        std::set<std::string> present;
        for (std::size_t j = 0; j < child.genes.size(); ++j) {
            if (j != i) {
                present.insert(child.genes[j].lemma);
            }
        }
        std::vector<const Gene*> candidates;
        for (const Gene& gene : pool) {
            if (present.count(gene.lemma) == 0) {
                candidates.push_back(&gene);
            }
        }
        if (candidates.empty()) {
            continue;  // pool exhausted, keep the duplicate
        }
        child.genes[i] = *candidates[rng.uniform_index(candidates.size())];
    }

    child = make_query(std::move(child.genes));
}

}  // namespace

std::pair<Query, Query> crossover(const std::pair<Query, Query>& parents, const Config& config,
                                  const Lexicon& lexicon, const std::vector<Gene>& pool, Rng& rng,
                                  std::vector<std::string>* introduced) {
    const std::size_t n = parents.first.genes.size();
    if (parents.second.genes.size() != n || n == 0) {
        throw std::invalid_argument("crossover: parents of different or zero lengths");
    }

    std::pair<Query, Query> children;
    if (config.crossover_type == CrossoverType::OnePoint) {
        if (n < 2) {
            throw std::invalid_argument("crossover: one_point needs at least 2 genes");
        }
        const int cut = 1 + static_cast<int>(rng.uniform_index(n - 1));
        children = crossover_one_point(parents.first, parents.second, cut);
    } else {
        std::vector<bool> take_first(n);
        for (std::size_t i = 0; i < n; ++i) {
            take_first[i] = rng.bernoulli(0.5);
        }
        children = crossover_discrete(parents.first, parents.second, take_first);
    }

    PolishChild(children.first, config, lexicon, pool, rng, introduced);
    PolishChild(children.second, config, lexicon, pool, rng, introduced);
    return children;
}

Query mutate(const Query& query, const Config& config, const std::vector<Gene>& pool, Rng& rng,
             bool* mutated) {
    if (mutated != nullptr) {
        *mutated = false;
    }
    if (!rng.bernoulli(config.mutation_prob)) {
        return query;
    }
    const std::set<std::string> present = lemma_set(query);
    std::vector<const Gene*> candidates;
    for (const Gene& gene : pool) {
        if (present.count(gene.lemma) == 0) {
            candidates.push_back(&gene);
        }
    }
    if (candidates.empty()) {
        std::cerr << "warning: mutation skipped, keyword pool has no lemma outside '"
                  << query.query_text << "'\n";
        return query;
    }
    Query result = query;
    const std::size_t position = rng.uniform_index(result.genes.size());
    result.genes[position] = *candidates[rng.uniform_index(candidates.size())];
    result = make_query(std::move(result.genes));
    if (mutated != nullptr) {
        *mutated = true;
    }
    return result;
}

Population next_generation(const Population& parents, std::vector<Query> children, Engine& engine,
                           const Lexicon& lexicon, const Config& config, const LemmaList& pattern,
                           const std::vector<Gene>& pool, Rng& rng, JoinedOutcome* joined_outcome) {
    std::vector<Query> joined;
    std::vector<bool> needs_fetch;
    std::set<std::set<std::string>> seen;
    for (const Query& parent : parents.queries) {
        if (seen.insert(lemma_set(parent)).second) {
            joined.push_back(parent);
            needs_fetch.push_back(false);
        }
    }
    for (Query& child : children) {
        if (seen.insert(lemma_set(child)).second) {
            joined.push_back(std::move(child));
            needs_fetch.push_back(true);
        }
    }
    // Underflow: refill with fresh random queries; these may duplicate
    // existing members when the pool is too small to avoid it.
    while (joined.size() < static_cast<std::size_t>(config.population_size)) {
        joined.push_back(RandomQuery(pool, config.genes_per_query, rng));
        needs_fetch.push_back(true);
    }

    for (std::size_t i = 0; i < joined.size(); ++i) {
        if (needs_fetch[i]) {
            joined[i].results = FetchOrEmpty(joined[i].query_text, engine, config.results_per_query);
        }
    }

    ScoreQueries(joined, lexicon, config, pattern);

    std::vector<std::size_t> order(joined.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&joined](std::size_t a, std::size_t b) {
        return joined[a].fitness > joined[b].fitness;
    });
    const std::size_t keep = static_cast<std::size_t>(config.population_size);

    if (joined_outcome != nullptr) {
        joined_outcome->fitness.clear();
        joined_outcome->survived.assign(joined.size(), false);
        for (const Query& query : joined) {
            joined_outcome->fitness.push_back(query.fitness);
        }
        for (std::size_t i = 0; i < keep && i < order.size(); ++i) {
            joined_outcome->survived[order[i]] = true;
        }
    }

    Population next;
    next.generation_number = parents.generation_number + 1;
    for (std::size_t i = 0; i < keep && i < order.size(); ++i) {
        next.queries.push_back(std::move(joined[order[i]]));
    }
    // Survivors stand alone as the new population: score them again in their
    // own context (no fetching, results are cached) so resource attributes
    // refer to the surviving queries only.
    FinishPopulation(next, lexicon, config, pattern);
    return next;
}

StopReason should_stop(const RunState& state, const Config& config) {
    const Population& population = state.current_population;
    if (population.sigma_fitness <= config.sigma_threshold) {
        return StopReason::Stability;
    }
    if (population.generation_number >= config.target_generations) {
        return StopReason::GenerationTarget;
    }
    if (population.generation_number >= config.max_generations_cap) {
        return StopReason::HardCap;
    }
    return StopReason::Running;
}

RunState init_run_state(const Config& config, std::vector<Gene> pool) {
    RunState state;
    state.config = config;
    state.keyword_pool = std::move(pool);
    state.rng = Rng(config.rng_seed);
    return state;
}

StopReason advance(RunState& state, Engine& engine, const Lexicon& lexicon, int max_steps,
                   const std::function<void(const RunState&)>& on_generation) {
    const LemmaList pattern = pattern_of(state.keyword_pool);
    try {
        if (state.history.empty()) {
            state.current_population =
                create_initial_population(state.keyword_pool, state.config, state.rng);
            evaluate(state.current_population, engine, lexicon, state.config, pattern);
            state.init_population = state.current_population;
            PushHistory(state, 0);
            MergeAllResources(state);
            if (on_generation) {
                on_generation(state);
            }
        }

        int steps = 0;
        for (;;) {
            const StopReason reason = should_stop(state, state.config);
            if (reason != StopReason::Running) {
                state.stop_reason = reason;
                return reason;
            }
            if (max_steps >= 0 && steps >= max_steps) {
                state.stop_reason = StopReason::Running;
                return StopReason::Running;
            }

            const std::vector<Query> parents = select_best(state.current_population, state.config);
            const std::vector<std::pair<Query, Query>> pairs = select_parent_pairs(parents);
            std::vector<Query> children;
            std::vector<std::string> introduced;
            for (const auto& pair : pairs) {
                auto kids = crossover(pair, state.config, lexicon, state.keyword_pool, state.rng,
                                      &introduced);
                children.push_back(std::move(kids.first));
                children.push_back(std::move(kids.second));
            }
            int mutations = 0;
            for (Query& child : children) {
                bool mutated = false;
                child = mutate(child, state.config, state.keyword_pool, state.rng, &mutated);
                mutations += mutated ? 1 : 0;
            }

            state.current_population =
                next_generation(state.current_population, std::move(children), engine, lexicon,
                                state.config, pattern, state.keyword_pool, state.rng);
            RecordIntroducedLemmas(state, introduced);
            PushHistory(state, mutations);
            MergeAllResources(state);
            if (on_generation) {
                on_generation(state);
            }
            ++steps;
        }
    } catch (const EngineError& error) {
        state.stop_reason = StopReason::Error;
        state.error_text = error.what();
        return StopReason::Error;
    }
}

RunState run(const Config& config, const Lexicon& lexicon, Engine& engine, std::vector<Gene> pool,
             const std::function<void(const RunState&)>& on_generation) {
    RunState state = init_run_state(config, std::move(pool));
    advance(state, engine, lexicon, -1, on_generation);
    return state;
}

}  // namespace gaf
