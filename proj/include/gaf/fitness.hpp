#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gaf/config.hpp"
#include "gaf/lexicon.hpp"
#include "gaf/search.hpp"
#include "gaf/similarity.hpp"

namespace gaf {

// One (query, rank) sighting of a resource within a population's result
// lists; query_index addresses the population's query vector.
struct Appearance {
    int query_index = 0;
    int rank = 0;

    bool operator==(const Appearance&) const = default;
};

struct FitnessAttrs {
    double p_bar = 0.0;    // mean rank over the lists where the document appears
    double p_score = 0.0;  // (f1 + 1 - p_bar) / f1, higher is better
    int r = 0;             // number of queries that retrieved the document
    double r_score = 0.0;  // r / N
    double s = 0.0;        // cosine similarity against the keyword pattern
    double w = 0.0;        // f5*p_score + f6*r_score + f7*s, after host damping

    bool operator==(const FitnessAttrs&) const = default;
};

// A retrieved document, deduplicated across a population's result lists.
struct Resource {
    std::string location;
    std::string title;
    std::string snippet;
    LemmaList true_content;  // lemmatized title + snippet
    std::vector<Appearance> appearances;
    FitnessAttrs attrs;

    bool operator==(const Resource&) const = default;
};

// Merges per-query result lists into one resource per location. Within a
// single list duplicate locations collapse to their best (lowest) rank;
// title/snippet come from the first sighting in (query index, rank) order.
std::vector<Resource> aggregate_resources(const std::vector<std::vector<SearchHit>>& per_query,
                                          const Lexicon& lexicon);

// (p_bar, p_score) for a non-empty appearance list; ranks must be within
// [1, results_per_query] so p_score stays within [1/f1, 1].
std::pair<double, double> position_score(const std::vector<Appearance>& appearances,
                                         int results_per_query);

double occurrence_score(int r, int num_queries);

double resource_weight(double p_score, double r_score, double s, const Config& config);

// URI authority, or the top-level directory for corpus-relative paths.
std::string host_of(const std::string& location);

// Within each host group ordered by (w desc, location asc), the j-th resource
// (j >= 2) gets w *= coeff^(j-1); the whole list is then re-sorted by
// (w desc, location asc).
void same_host_adjust(std::vector<Resource>& resources, double coeff);

// Mean or median of the given weights; 0 for an empty list.
double query_fitness(const std::vector<double>& weights, AggregationMode mode);
double population_fitness(const std::vector<double>& query_fitnesses, AggregationMode mode);

// Population standard deviation (N divisor); 0 for an empty list.
double sigma_fitness(const std::vector<double>& query_fitnesses);

// Full scoring pass over aggregated resources: s against the pattern with
// stats built over all resource texts plus the pattern itself, then p/r/w,
// host damping, and the final (w desc, location asc) ordering.
void score_resources(std::vector<Resource>& resources, int num_queries, const LemmaList& pattern,
                     const Config& config, const SimilarityOptions& opts = {});

// Weights of the resources a given query retrieved, in the resources' order.
std::vector<double> per_query_weights(const std::vector<Resource>& resources, int query_index);

}  // namespace gaf
