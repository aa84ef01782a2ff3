#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaf {

enum class EngineKind { Local, HttpAdapter };
enum class AggregationMode { Mean, Median };
enum class CrossoverType { OnePoint, Discrete };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Config file exists but cannot be opened or read.
struct ConfigIoError : ConfigError {
    using ConfigError::ConfigError;
};

// Run parameters. Config files use the short key names noted on the right;
// the long field names are what the rest of the code reads.
struct Config {
    EngineKind engine_kind = EngineKind::Local;                 // g1
    int population_size = 8;                                    // g2
    int genes_per_query = 3;                                    // g3
    std::string keyword_pool_path;                              // g4
    int results_per_query = 10;                                 // f1
    int max_results_per_population = 200;                       // f2
    int max_results_total = 1000;                               // f3
    double same_host_coeff = 0.8;                               // f4
    double weight_position = 1.0 / 3.0;                         // f5
    double weight_recurrence = 1.0 / 3.0;                       // f6
    double weight_similarity = 1.0 / 3.0;                       // f7
    AggregationMode aggregation_mode = AggregationMode::Mean;   // f8
    double parent_criterion_mult = 1.0;                         // c1
    double mutation_prob = 0.1;                                 // m1
    double synonym_swap_prob = 0.2;
    int target_generations = 10;                                // e1
    double sigma_threshold = 0.01;                              // e2
    int max_generations_cap = 50;                               // e3
    CrossoverType crossover_type = CrossoverType::OnePoint;
    std::uint64_t rng_seed = 42;
    bool autosave = false;
    std::string state_path;

    bool operator==(const Config&) const = default;
};

Config default_config();

// Every violated constraint, empty when the config is valid.
std::vector<std::string> validate(const Config& config);

// Parses a "key = value" document. '#' starts a comment, blank lines are
// skipped, unknown keys are hard errors. Keys absent from the document keep
// their defaults. The result is validated; any violation throws ConfigError.
Config parse_config(const std::string& text, const std::string& origin = "<string>");
Config load_config(const std::string& path);

std::string config_to_text(const Config& config);
void save_config(const Config& config, const std::string& path);

std::string to_string(EngineKind kind);
std::string to_string(AggregationMode mode);
std::string to_string(CrossoverType type);
EngineKind engine_kind_from_string(const std::string& text);
AggregationMode aggregation_mode_from_string(const std::string& text);
CrossoverType crossover_type_from_string(const std::string& text);

}  // namespace gaf
