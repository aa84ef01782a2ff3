// Acceptance gate: ten checks, one PASS/FAIL line each, exit 0 only if all
// pass. Tolerances are pinned next to each check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "gaf/config.hpp"
#include "gaf/evolve.hpp"
#include "gaf/fitness.hpp"
#include "gaf/lexicon.hpp"
#include "gaf/persistence.hpp"
#include "gaf/rng.hpp"
#include "gaf/search.hpp"
#include "gaf/similarity.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace gaf;
using gaf::test::TempDir;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

bool detail(bool condition, const std::string& message) {
    if (!condition) {
        std::cout << "  detail: " << message << "\n";
    }
    return condition;
}

void criterion(int number, const std::string& label, bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << ": criterion " << number << " - " << label << std::endl;
    if (!ok) {
        ++g_failures;
    }
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Gene gene(const std::string& lemma) { return Gene{lemma, lemma}; }

Query query_of(std::initializer_list<std::string> lemmas) {
    std::vector<Gene> genes;
    for (const std::string& lemma : lemmas) {
        genes.push_back(gene(lemma));
    }
    return make_query(std::move(genes));
}

std::vector<LemmaList> random_corpus(Rng& rng) {
    const std::size_t num_docs = 1 + rng.uniform_index(10);
    const std::size_t vocab = 1 + rng.uniform_index(50);
    std::vector<LemmaList> corpus;
    for (std::size_t d = 0; d < num_docs; ++d) {
        LemmaList doc;
        const std::size_t length = rng.uniform_index(40);
        for (std::size_t i = 0; i < length; ++i) {
            doc.push_back("t" + std::to_string(rng.uniform_index(vocab)));
        }
        corpus.push_back(std::move(doc));
    }
    return corpus;
}

// Fixture corpus wiring shared by criteria 6, 8, and 10.
struct FixtureWorld {
    Lexicon lexicon;
    std::vector<Gene> pool;
    LocalIndex index;
    std::unique_ptr<LocalEngine> engine;

    FixtureWorld() {
        const std::string fixtures = gaf::test::fixtures_dir();
        lexicon = Lexicon::load({fixtures + "/lexicon/lemmas.tsv",
                                 fixtures + "/lexicon/synonyms.txt",
                                 fixtures + "/lexicon/stopwords.txt"});
        pool = load_keyword_pool(fixtures + "/keywords_solar.txt", lexicon);
        index = index_corpus(fixtures + "/corpus", lexicon);
        engine = std::make_unique<LocalEngine>(index, lexicon);
    }

    Config config(std::uint64_t seed) const {
        Config config;
        config.population_size = 8;
        config.genes_per_query = 3;
        config.keyword_pool_path = "fixtures/keywords_solar.txt";
        config.results_per_query = 10;
        config.weight_position = 1.0;
        config.weight_recurrence = 1.0;
        config.weight_similarity = 2.0;
        config.target_generations = 10;
        config.sigma_threshold = 1e-12;
        config.max_generations_cap = 50;
        config.rng_seed = seed;
        return config;
    }
};

// Small in-memory world for the termination and elitism sweeps.
struct ToyWorld {
    Lexicon lexicon;
    std::vector<Gene> pool;
    LocalIndex index;
    std::unique_ptr<LocalEngine> engine;

    ToyWorld() {
        lexicon = Lexicon::builtin_english();
        lexicon.add_synonym_group({"grid", "network"});
        for (const std::string word :
             {"solar", "panel", "energy", "grid", "cell", "silicon", "inverter", "module"}) {
            pool.push_back(gene(word));
        }
        const std::vector<CorpusDoc> docs = {
            {"w/a.txt", "solar panel power", "solar panel energy grid solar"},
            {"w/b.txt", "panel module", "panel module cell silicon panel"},
            {"w/c.txt", "energy grid", "energy grid inverter solar network"},
            {"x/d.txt", "cell silicon", "cell silicon wafer module"},
            {"x/e.txt", "inverter line", "inverter converter panel energy"},
            {"x/f.txt", "mixed bag", "solar cell coffee roast"},
            {"y/g.txt", "coffee", "coffee roast brew grind"},
            {"y/h.txt", "tea", "tea leaf brew cup"},
        };
        index = build_index(docs, lexicon);
        engine = std::make_unique<LocalEngine>(index, lexicon);
    }
};

// ---------------------------------------------------------------- criterion 1

bool similarity_oracle_equivalence() {
    const auto start = Clock::now();
    bool ok = true;
    Rng rng(1001);
    for (int trial = 0; trial < 50 && ok; ++trial) {
        const auto corpus = random_corpus(rng);
        const auto& pattern = corpus[rng.uniform_index(corpus.size())];
        const auto& doc = corpus[rng.uniform_index(corpus.size())];
        const double got = similarity(pattern, doc, corpus);
        const double want = gaf::test::oracle_similarity(pattern, doc, corpus);
        ok = detail(std::abs(got - want) <= 1e-12,
                    "similarity " + std::to_string(got) + " vs oracle " + std::to_string(want) +
                        " in trial " + std::to_string(trial));
    }
    // idf spot values: 4 docs / term in 2 -> ln(5/2); 1 doc / term in 1 -> ln 2
    ok = ok && detail(std::abs(idf(4, 2) - std::log(2.5)) <= 1e-12, "idf(4,2) != ln(5/2)");
    ok = ok && detail(std::abs(idf(1, 1) - std::log(2.0)) <= 1e-12, "idf(1,1) != ln(2)");
    ok = ok && detail(seconds_since(start) < 5.0, "similarity sweep exceeded 5 s");
    return ok;
}

// ---------------------------------------------------------------- criterion 2

bool log_base_invariance() {
    bool ok = true;
    Rng rng(1001);  // the same 50 corpora as criterion 1
    SimilarityOptions base2;
    base2.log_base = 2.0;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        const auto corpus = random_corpus(rng);
        const auto& pattern = corpus[rng.uniform_index(corpus.size())];
        const auto& doc = corpus[rng.uniform_index(corpus.size())];
        const double with_ln = similarity(pattern, doc, corpus);
        const double with_log2 = similarity(pattern, doc, corpus, base2);
        ok = detail(std::abs(with_ln - with_log2) <= 1e-12,
                    "ln/log2 mismatch in trial " + std::to_string(trial));
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 3

bool fitness_pipeline_oracle() {
    const auto start = Clock::now();
    bool ok = true;
    const Lexicon lexicon = Lexicon::builtin_english();
    const std::vector<std::string> vocab = {"solar", "panel",  "cell",  "energy", "coffee",
                                            "roast", "genome", "helix", "grid",   "module"};
    const std::vector<std::string> hosts = {"http://one.example/", "http://two.example/",
                                            "site/", ""};
    const Config config = default_config();
    Rng rng(3003);

    for (int trial = 0; trial < 100 && ok; ++trial) {
        const std::size_t num_queries = 1 + rng.uniform_index(4);
        std::vector<std::vector<SearchHit>> serps(num_queries);
        for (auto& serp : serps) {
            const std::size_t count = rng.uniform_index(7);
            for (std::size_t i = 0; i < count; ++i) {
                SearchHit hit;
                hit.location = hosts[rng.uniform_index(hosts.size())] + "r" +
                               std::to_string(rng.uniform_index(6));
                hit.title = vocab[rng.uniform_index(vocab.size())];
                hit.snippet = vocab[rng.uniform_index(vocab.size())] + " " +
                              vocab[rng.uniform_index(vocab.size())];
                hit.rank = static_cast<int>(i) + 1;
                serp.push_back(std::move(hit));
            }
        }
        LemmaList pattern;
        for (int i = 0; i < 4; ++i) {
            pattern.push_back(vocab[rng.uniform_index(vocab.size())]);
        }

        auto resources = aggregate_resources(serps, lexicon);
        score_resources(resources, static_cast<int>(num_queries), pattern, config, {});
        const auto expected = gaf::test::oracle_fitness(serps, pattern, config, lexicon);

        ok = detail(resources.size() == expected.size(), "resource count mismatch");
        for (std::size_t i = 0; ok && i < resources.size(); ++i) {
            const auto& got = resources[i];
            const auto& want = expected[i];
            ok = detail(got.location == want.location,
                        "order mismatch at " + std::to_string(i) + ": " + got.location + " vs " +
                            want.location) &&
                 detail(std::abs(got.attrs.p_bar - want.attrs.p_bar) <= 1e-12, "p_bar mismatch") &&
                 detail(got.attrs.r == want.attrs.r, "r mismatch") &&
                 detail(std::abs(got.attrs.r_score - want.attrs.r_score) <= 1e-12,
                        "r_score mismatch") &&
                 detail(std::abs(got.attrs.s - want.attrs.s) <= 1e-12, "s mismatch") &&
                 detail(std::abs(got.attrs.w - want.attrs.w) <= 1e-12, "w mismatch") &&
                 detail(got.attrs.r <= static_cast<int>(num_queries), "r exceeds query count");
        }
    }

    // p_score is anti-monotone in p_bar on constructed pairs
    for (int better = 1; better < 10 && ok; ++better) {
        const auto [pb_better, ps_better] = position_score({{0, better}}, 10);
        const auto [pb_worse, ps_worse] = position_score({{0, better + 1}}, 10);
        ok = detail(pb_better < pb_worse && ps_better > ps_worse,
                    "p_score not anti-monotone at rank " + std::to_string(better));
    }
    ok = ok && detail(seconds_since(start) < 10.0, "fitness sweep exceeded 10 s");
    return ok;
}

// ---------------------------------------------------------------- criterion 4

bool operator_correctness() {
    bool ok = true;

    // one-point crossover with a forced cut reproduces the worked example
    const Query p1 = query_of({"a", "b", "c"});
    const Query p2 = query_of({"x", "y", "z"});
    const auto [c1, c2] = crossover_one_point(p1, p2, 1);
    ok = detail(c1.query_text == "a y z" && c2.query_text == "x b c",
                "forced one-point cut gave '" + c1.query_text + "' / '" + c2.query_text + "'");

    // mutation at probability 0 is the identity
    std::vector<Gene> pool;
    for (int i = 0; i < 30; ++i) {
        pool.push_back(gene("kw" + std::to_string(i)));
    }
    Config config = default_config();
    Rng rng(4004);
    const auto random_query = [&pool](Rng& r) {
        std::vector<Gene> genes;
        std::set<std::size_t> used;
        while (genes.size() < 3) {
            const std::size_t pick = r.uniform_index(pool.size());
            if (used.insert(pick).second) {
                genes.push_back(pool[pick]);
            }
        }
        return make_query(std::move(genes));
    };

    config.mutation_prob = 0.0;
    for (int i = 0; i < 1000 && ok; ++i) {
        const Query original = random_query(rng);
        ok = detail(mutate(original, config, pool, rng) == original,
                    "identity mutation changed a query");
    }

    // mutation at probability 1 changes exactly one gene
    config.mutation_prob = 1.0;
    for (int i = 0; i < 1000 && ok; ++i) {
        const Query original = random_query(rng);
        const Query result = mutate(original, config, pool, rng);
        int changed = 0;
        for (std::size_t g = 0; g < original.genes.size(); ++g) {
            changed += result.genes[g] != original.genes[g] ? 1 : 0;
        }
        ok = detail(changed == 1, "expected exactly one changed gene, saw " +
                                      std::to_string(changed));
        ok = ok && detail(lemma_set(result).size() == 3, "mutation created a duplicate lemma");
    }

    // mutation count over 10000 trials at 0.1 lands inside [800, 1200]
    config.mutation_prob = 0.1;
    int mutations = 0;
    for (int i = 0; i < 10000; ++i) {
        const Query original = random_query(rng);
        bool mutated = false;
        mutate(original, config, pool, rng, &mutated);
        mutations += mutated ? 1 : 0;
    }
    ok = ok && detail(mutations >= 800 && mutations <= 1200,
                      "mutation count " + std::to_string(mutations) + " outside [800, 1200]");

    // genotype distance: symmetry, bounds, and the half-overlap example
    const Query abc = query_of({"a", "b", "c"});
    const Query abd = query_of({"a", "b", "d"});
    ok = ok && detail(std::abs(genotype_distance(abc, abd) - 0.5) <= 1e-12,
                      "distance({a,b,c},{a,b,d}) != 0.5");
    for (int i = 0; i < 500 && ok; ++i) {
        const Query qa = random_query(rng);
        const Query qb = random_query(rng);
        const double ab = genotype_distance(qa, qb);
        const double ba = genotype_distance(qb, qa);
        ok = detail(ab == ba, "distance not symmetric") &&
             detail(ab >= 0.0 && ab <= 1.0, "distance out of [0,1]") &&
             detail(genotype_distance(qa, qa) == 0.0, "self distance not 0");
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 5

bool elitism_within_evaluation() {
    bool ok = true;
    const ToyWorld world;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        Config config = default_config();
        config.population_size = 3 + static_cast<int>(trial % 4);
        config.genes_per_query = 2 + static_cast<int>(trial % 2);
        config.results_per_query = 5;
        config.keyword_pool_path = "unused";
        config.crossover_type = trial % 2 == 0 ? CrossoverType::OnePoint : CrossoverType::Discrete;
        Rng rng(5000 + static_cast<std::uint64_t>(trial));

        const LemmaList pattern = pattern_of(world.pool);
        Population parents = create_initial_population(world.pool, config, rng);
        evaluate(parents, *world.engine, world.lexicon, config, pattern);

        std::vector<Query> children;
        for (const auto& pair : select_parent_pairs(select_best(parents, config))) {
            auto kids = crossover(pair, config, world.lexicon, world.pool, rng);
            children.push_back(mutate(kids.first, config, world.pool, rng));
            children.push_back(mutate(kids.second, config, world.pool, rng));
        }

        JoinedOutcome outcome;
        const Population next = next_generation(parents, children, *world.engine, world.lexicon,
                                                config, pattern, world.pool, rng, &outcome);

        ok = detail(next.queries.size() == static_cast<std::size_t>(config.population_size),
                    "next generation size is not g2");
        double min_survivor = 1e300;
        double max_loser = -1e300;
        bool any_loser = false;
        for (std::size_t i = 0; i < outcome.fitness.size(); ++i) {
            if (outcome.survived[i]) {
                min_survivor = std::min(min_survivor, outcome.fitness[i]);
            } else {
                any_loser = true;
                max_loser = std::max(max_loser, outcome.fitness[i]);
            }
        }
        if (any_loser) {
            ok = ok && detail(min_survivor >= max_loser,
                              "a dropped query out-scored a survivor in trial " +
                                  std::to_string(trial));
        }
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 6

bool determinism_and_resume() {
    bool ok = true;
    const FixtureWorld world;
    const Config config = world.config(42);

    const auto start1 = Clock::now();
    const RunState first = run(config, world.lexicon, *world.engine, world.pool);
    const double elapsed1 = seconds_since(start1);

    const auto start2 = Clock::now();
    const RunState second = run(config, world.lexicon, *world.engine, world.pool);
    const double elapsed2 = seconds_since(start2);

    const std::string text1 = state_to_text(first);
    ok = detail(text1 == state_to_text(second), "two seed-42 runs serialized differently");

    // interrupt after generation 3, save, load, resume
    TempDir dir;
    RunState interrupted = init_run_state(config, world.pool);
    advance(interrupted, *world.engine, world.lexicon, 3);
    ok = ok && detail(interrupted.current_population.generation_number == 3,
                      "interrupt did not stop at generation 3");
    save_state(interrupted, dir.file("pause.gaf"));
    RunState resumed = load_state(dir.file("pause.gaf"));
    advance(resumed, *world.engine, world.lexicon);
    ok = ok && detail(state_to_text(resumed) == text1,
                      "interrupted-and-resumed run differs from the uninterrupted one");

    ok = ok && detail(elapsed1 < 60.0 && elapsed2 < 60.0, "a fixture run exceeded 60 s");
    return ok;
}

// ---------------------------------------------------------------- criterion 7

bool termination() {
    bool ok = true;
    const ToyWorld world;
    Rng meta(7007);
    for (int trial = 0; trial < 20 && ok; ++trial) {
        Config config = default_config();
        config.population_size = 2 + static_cast<int>(meta.uniform_index(4));
        config.genes_per_query = 2 + static_cast<int>(meta.uniform_index(2));
        config.results_per_query = 3 + static_cast<int>(meta.uniform_index(5));
        config.keyword_pool_path = "unused";
        config.target_generations = static_cast<int>(meta.uniform_index(21));
        config.max_generations_cap =
            config.target_generations +
            static_cast<int>(meta.uniform_index(
                static_cast<std::size_t>(21 - config.target_generations)));
        config.sigma_threshold = meta.bernoulli(0.3) ? 0.05 : 1e-12;
        config.mutation_prob = meta.uniform_real();
        config.synonym_swap_prob = meta.uniform_real();
        config.crossover_type =
            meta.bernoulli(0.5) ? CrossoverType::OnePoint : CrossoverType::Discrete;
        config.aggregation_mode =
            meta.bernoulli(0.5) ? AggregationMode::Mean : AggregationMode::Median;
        config.rng_seed = meta.next_u64();
        if (!validate(config).empty()) {
            ok = detail(false, "random config failed validation in trial " +
                                   std::to_string(trial));
            break;
        }

        const RunState state = run(config, world.lexicon, *world.engine, world.pool);
        ok = detail(state.stop_reason == StopReason::Stability ||
                        state.stop_reason == StopReason::GenerationTarget ||
                        state.stop_reason == StopReason::HardCap,
                    "run ended without a terminal reason in trial " + std::to_string(trial)) &&
             detail(state.current_population.generation_number <= config.max_generations_cap,
                    "run overshot e3 in trial " + std::to_string(trial));
    }

    // constant fitness: an empty index returns nothing, every fitness is 0
    const Lexicon lexicon = Lexicon::builtin_english();
    const LocalIndex empty_index = build_index({}, lexicon);
    LocalEngine empty_engine(empty_index, lexicon);
    Config config = default_config();
    config.keyword_pool_path = "unused";
    const RunState flat = run(config, lexicon, empty_engine, world.pool);
    ok = ok && detail(flat.stop_reason == StopReason::Stability,
                      "constant fitness did not stop on Stability");
    ok = ok && detail(flat.current_population.generation_number == 0,
                      "constant fitness did not stop at the first check");
    return ok;
}

// ---------------------------------------------------------------- criterion 8

bool desk_scale_convergence() {
    const auto start = Clock::now();
    bool ok = true;
    const FixtureWorld world;

    const auto top10_stats = [](const Population& population, double& mean_s, double& on_topic) {
        const std::size_t take = std::min<std::size_t>(10, population.resources.size());
        double s_sum = 0.0;
        double topical = 0.0;
        for (std::size_t i = 0; i < take; ++i) {
            s_sum += population.resources[i].attrs.s;
            if (population.resources[i].location.rfind("solar", 0) == 0) {
                topical += 1.0;
            }
        }
        mean_s = take > 0 ? s_sum / static_cast<double>(take) : 0.0;
        on_topic = take > 0 ? topical / static_cast<double>(take) : 0.0;
    };

    int s_improved = 0;
    int topic_improved = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const RunState state = run(world.config(seed), world.lexicon, *world.engine, world.pool);
        double s_init = 0.0;
        double topic_init = 0.0;
        double s_final = 0.0;
        double topic_final = 0.0;
        top10_stats(state.init_population, s_init, topic_init);
        top10_stats(state.current_population, s_final, topic_final);
        if (s_final + 1e-12 >= s_init) {
            ++s_improved;
        }
        if (topic_final + 1e-12 >= topic_init) {
            ++topic_improved;
        }
        std::printf("  seed %2llu: mean s %.4f -> %.4f, on-topic %.2f -> %.2f\n",
                    static_cast<unsigned long long>(seed), s_init, s_final, topic_init,
                    topic_final);
    }
    ok = detail(s_improved >= 8, "mean s of the top-10 improved in only " +
                                     std::to_string(s_improved) + "/10 runs");
    ok = ok && detail(topic_improved >= 8, "on-topic fraction improved in only " +
                                               std::to_string(topic_improved) + "/10 runs");
    ok = ok && detail(seconds_since(start) < 600.0, "convergence sweep exceeded 10 minutes");
    return ok;
}

// ---------------------------------------------------------------- criterion 9

bool persistence_round_trip() {
    bool ok = true;
    const ToyWorld world;
    Rng meta(9009);
    for (int trial = 0; trial < 100 && ok; ++trial) {
        Config config = default_config();
        config.population_size = 2 + static_cast<int>(meta.uniform_index(3));
        config.genes_per_query = 2 + static_cast<int>(meta.uniform_index(2));
        config.results_per_query = 3 + static_cast<int>(meta.uniform_index(4));
        config.keyword_pool_path = "pool.txt";
        config.target_generations = static_cast<int>(meta.uniform_index(4));
        config.max_generations_cap = config.target_generations + 2;
        config.sigma_threshold = meta.bernoulli(0.25) ? 0.05 : 1e-12;
        config.aggregation_mode =
            meta.bernoulli(0.5) ? AggregationMode::Mean : AggregationMode::Median;
        config.rng_seed = meta.next_u64();
        config.autosave = meta.bernoulli(0.5);

        const RunState state = run(config, world.lexicon, *world.engine, world.pool);
        const std::string text = state_to_text(state);
        const RunState reloaded = state_from_text(text);
        ok = detail(reloaded == state, "round trip lost information in trial " +
                                           std::to_string(trial)) &&
             detail(state_to_text(reloaded) == text,
                    "round trip serialized differently in trial " + std::to_string(trial));
        for (const std::string name : {"\"KeyWords\"", "\"Options\"", "\"Populations\"",
                                       "\"InitPopulation\"", "\"CurrentPopulation\"",
                                       "\"StopReason\""}) {
            ok = ok && detail(text.find(name) != std::string::npos,
                              "element " + name + " missing from the state file");
        }
    }
    return ok;
}

// --------------------------------------------------------------- criterion 10

bool local_ranking_oracle() {
    bool ok = true;
    const FixtureWorld world;

    std::vector<CorpusDoc> docs;
    for (const IndexedDoc& doc : world.index.docs) {
        docs.push_back({doc.location, doc.title, doc.body});
    }

    std::vector<std::string> terms;
    for (const Gene& g : world.pool) {
        terms.push_back(g.lemma);
    }
    terms.insert(terms.end(), {"genome", "coffee", "network", "battery", "nosuchterm"});

    Rng rng(1010);
    for (int trial = 0; trial < 20 && ok; ++trial) {
        LemmaList query;
        const std::size_t length = 1 + rng.uniform_index(3);
        for (std::size_t i = 0; i < length; ++i) {
            query.push_back(terms[rng.uniform_index(terms.size())]);
        }

        const auto full = rank_local_scored(query, world.index, 10);
        const auto expected = gaf::test::oracle_rank(docs, query, 10, world.lexicon);
        ok = detail(full.size() == expected.size(),
                    "result count mismatch in trial " + std::to_string(trial));
        for (std::size_t i = 0; ok && i < full.size(); ++i) {
            ok = detail(full[i].hit.location == expected[i].location,
                        "rank " + std::to_string(i + 1) + " mismatch in trial " +
                            std::to_string(trial) + ": " + full[i].hit.location + " vs " +
                            expected[i].location);
        }

        // truncation: shorter limits are exact prefixes
        const auto top3 = rank_local(query, world.index, 3);
        const auto top5 = rank_local(query, world.index, 5);
        const auto top10 = rank_local(query, world.index, 10);
        ok = ok && detail(top3.size() <= 3 && top5.size() <= 5, "limit overrun");
        for (std::size_t i = 0; ok && i < top3.size(); ++i) {
            ok = detail(top3[i].location == top10[i].location, "limit-3 not a prefix");
        }
        for (std::size_t i = 0; ok && i < top5.size(); ++i) {
            ok = detail(top5[i].location == top10[i].location, "limit-5 not a prefix");
        }
    }
    return ok;
}

}  // namespace

int main() {
    criterion(1, "similarity matches the dense tf-idf/cosine oracle", similarity_oracle_equivalence());
    criterion(2, "cosine is invariant to the idf log base", log_base_invariance());
    criterion(3, "fitness attributes match the brute-force recomputation", fitness_pipeline_oracle());
    criterion(4, "crossover, mutation, and distance behave as specified", operator_correctness());
    criterion(5, "survivors always dominate the joined population", elitism_within_evaluation());
    criterion(6, "seeded runs are byte-identical and resume losslessly", determinism_and_resume());
    criterion(7, "every configuration halts within its generation cap", termination());
    criterion(8, "evolved queries hold or improve retrieval quality", desk_scale_convergence());
    criterion(9, "states survive save/load round trips exactly", persistence_round_trip());
    criterion(10, "local ranking equals the dense ranking oracle", local_ranking_oracle());

    if (g_failures == 0) {
        std::cout << "ACCEPTANCE: all 10 criteria passed\n";
        return 0;
    }
    std::cout << "ACCEPTANCE: " << g_failures << " of 10 criteria FAILED\n";
    return 1;
}
