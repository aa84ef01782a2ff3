#include "gaf/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace gaf {
namespace {

bool ByWeightThenLocation(const Resource& a, const Resource& b) {
    if (a.attrs.w != b.attrs.w) {
        return a.attrs.w > b.attrs.w;
    }
    return a.location < b.location;
}

double Median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double Aggregate(const std::vector<double>& values, AggregationMode mode) {
    if (values.empty()) {
        return 0.0;
    }
    if (mode == AggregationMode::Median) {
        return Median(values);
    }
    double sum = 0.0;
    for (const double value : values) {
        sum += value;
    }
    return sum / static_cast<double>(values.size());
}

}  // namespace

std::vector<Resource> aggregate_resources(const std::vector<std::vector<SearchHit>>& per_query,
                                          const Lexicon& lexicon) {
    std::vector<Resource> resources;
    std::map<std::string, std::size_t> by_location;

    for (std::size_t qi = 0; qi < per_query.size(); ++qi) {
        for (const SearchHit& hit : per_query[qi]) {
            const auto found = by_location.find(hit.location);
            if (found == by_location.end()) {
                Resource resource;
                resource.location = hit.location;
                resource.title = hit.title;
                resource.snippet = hit.snippet;
                resource.true_content = lexicon.lemmatize(hit.title + " " + hit.snippet);
                resource.appearances.push_back(
                    Appearance{static_cast<int>(qi), hit.rank});
                by_location.emplace(hit.location, resources.size());
                resources.push_back(std::move(resource));
                continue;
            }
            Resource& resource = resources[found->second];
            Appearance& last = resource.appearances.back();
            if (last.query_index == static_cast<int>(qi)) {
                // same list again: keep the best rank (lists come rank-ordered)
                last.rank = std::min(last.rank, hit.rank);
            } else {
                resource.appearances.push_back(Appearance{static_cast<int>(qi), hit.rank});
            }
        }
    }
    return resources;
}

std::pair<double, double> position_score(const std::vector<Appearance>& appearances,
                                         int results_per_query) {
    if (appearances.empty()) {
        throw std::invalid_argument("position_score: empty appearance list");
    }
    double sum = 0.0;
    for (const Appearance& appearance : appearances) {
        if (appearance.rank < 1 || appearance.rank > results_per_query) {
            throw std::invalid_argument("position_score: rank outside [1, results_per_query]");
        }
        sum += static_cast<double>(appearance.rank);
    }
    const double p_bar = sum / static_cast<double>(appearances.size());
    const double p_score =
        (static_cast<double>(results_per_query) + 1.0 - p_bar) / static_cast<double>(results_per_query);
    return {p_bar, p_score};
}

double occurrence_score(int r, int num_queries) {
    if (num_queries < 1 || r < 1 || r > num_queries) {
        throw std::invalid_argument("occurrence_score: need 1 <= r <= num_queries");
    }
    return static_cast<double>(r) / static_cast<double>(num_queries);
}

double resource_weight(double p_score, double r_score, double s, const Config& config) {
    return config.weight_position * p_score + config.weight_recurrence * r_score +
           config.weight_similarity * s;
}

std::string host_of(const std::string& location) {
    const auto scheme_end = location.find("://");
    if (scheme_end != std::string::npos) {
        const auto authority_start = scheme_end + 3;
        const auto authority_end = location.find('/', authority_start);
        if (authority_end == std::string::npos) {
            return location.substr(authority_start);
        }
        return location.substr(authority_start, authority_end - authority_start);
    }
    const auto slash = location.find('/');
    if (slash == std::string::npos) {
        return "";  // top-level file, no directory
    }
    return location.substr(0, slash);
}

void same_host_adjust(std::vector<Resource>& resources, double coeff) {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < resources.size(); ++i) {
        groups[host_of(resources[i].location)].push_back(i);
    }
    for (auto& [host, members] : groups) {
        std::sort(members.begin(), members.end(), [&resources](std::size_t a, std::size_t b) {
            return ByWeightThenLocation(resources[a], resources[b]);
        });
        double factor = 1.0;
        for (std::size_t j = 1; j < members.size(); ++j) {
            factor *= coeff;
            resources[members[j]].attrs.w *= factor;
        }
    }
    std::sort(resources.begin(), resources.end(), ByWeightThenLocation);
}

double query_fitness(const std::vector<double>& weights, AggregationMode mode) {
    return Aggregate(weights, mode);
}

double population_fitness(const std::vector<double>& query_fitnesses, AggregationMode mode) {
    return Aggregate(query_fitnesses, mode);
}

double sigma_fitness(const std::vector<double>& query_fitnesses) {
    if (query_fitnesses.empty()) {
        return 0.0;
    }
    double mean = 0.0;
    for (const double value : query_fitnesses) {
        mean += value;
    }
    mean /= static_cast<double>(query_fitnesses.size());
    double variance = 0.0;
    for (const double value : query_fitnesses) {
        const double delta = value - mean;
        variance += delta * delta;
    }
    variance /= static_cast<double>(query_fitnesses.size());
    return std::sqrt(variance);
}

void score_resources(std::vector<Resource>& resources, int num_queries, const LemmaList& pattern,
                     const Config& config, const SimilarityOptions& opts) {
    if (resources.empty()) {
        return;
    }
    std::vector<LemmaList> corpus;
    corpus.reserve(resources.size() + 1);
    for (const Resource& resource : resources) {
        corpus.push_back(resource.true_content);
    }
    corpus.push_back(pattern);
    const TermStats stats = build_term_stats(corpus);
    const DocVector pattern_vector = tf_idf_vector(pattern, stats, opts);

    for (Resource& resource : resources) {
        const auto [p_bar, p_score] =
            position_score(resource.appearances, config.results_per_query);
        resource.attrs.p_bar = p_bar;
        resource.attrs.p_score = p_score;
        resource.attrs.r = static_cast<int>(resource.appearances.size());
        resource.attrs.r_score = occurrence_score(resource.attrs.r, num_queries);
        resource.attrs.s =
            cosine(pattern_vector, tf_idf_vector(resource.true_content, stats, opts));
        resource.attrs.w = resource_weight(resource.attrs.p_score, resource.attrs.r_score,
                                           resource.attrs.s, config);
    }
    same_host_adjust(resources, config.same_host_coeff);
}

std::vector<double> per_query_weights(const std::vector<Resource>& resources, int query_index) {
    std::vector<double> weights;
    for (const Resource& resource : resources) {
        for (const Appearance& appearance : resource.appearances) {
            if (appearance.query_index == query_index) {
                weights.push_back(resource.attrs.w);
                break;
            }
        }
    }
    return weights;
}

}  // namespace gaf
