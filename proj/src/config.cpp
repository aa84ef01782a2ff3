#include "gaf/config.hpp"

#include <cstdio>
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

[[noreturn]] void Fail(const std::string& origin, int line, const std::string& message) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + message);
}

long long ParseInt(const std::string& value, const std::string& origin, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        const long long parsed = std::stoll(value, &used);
        if (used != value.size()) {
            Fail(origin, line, key + ": trailing characters after integer '" + value + "'");
        }
        return parsed;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        Fail(origin, line, key + ": expected an integer, got '" + value + "'");
    }
}

double ParseDouble(const std::string& value, const std::string& origin, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) {
            Fail(origin, line, key + ": trailing characters after number '" + value + "'");
        }
        return parsed;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        Fail(origin, line, key + ": expected a number, got '" + value + "'");
    }
}

std::uint64_t ParseUint(const std::string& value, const std::string& origin, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        const unsigned long long parsed = std::stoull(value, &used);
        if (used != value.size() || (!value.empty() && value[0] == '-')) {
            Fail(origin, line, key + ": expected an unsigned integer, got '" + value + "'");
        }
        return parsed;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        Fail(origin, line, key + ": expected an unsigned integer, got '" + value + "'");
    }
}

bool ParseBool(const std::string& value, const std::string& origin, int line, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no" || value == "off") {
        return false;
    }
    Fail(origin, line, key + ": expected a boolean, got '" + value + "'");
}

std::string FormatDouble(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

}  // namespace

Config default_config() {
    return Config{};
}

std::string to_string(EngineKind kind) {
    return kind == EngineKind::Local ? "local" : "http";
}

std::string to_string(AggregationMode mode) {
    return mode == AggregationMode::Mean ? "mean" : "median";
}

std::string to_string(CrossoverType type) {
    return type == CrossoverType::OnePoint ? "one_point" : "discrete";
}

EngineKind engine_kind_from_string(const std::string& text) {
    if (text == "local") {
        return EngineKind::Local;
    }
    if (text == "http" || text == "http_adapter") {
        return EngineKind::HttpAdapter;
    }
    throw ConfigError("unknown engine kind '" + text + "' (expected local or http)");
}

AggregationMode aggregation_mode_from_string(const std::string& text) {
    if (text == "mean") {
        return AggregationMode::Mean;
    }
    if (text == "median") {
        return AggregationMode::Median;
    }
    throw ConfigError("unknown aggregation mode '" + text + "' (expected mean or median)");
}

CrossoverType crossover_type_from_string(const std::string& text) {
    if (text == "one_point") {
        return CrossoverType::OnePoint;
    }
    if (text == "discrete") {
        return CrossoverType::Discrete;
    }
    throw ConfigError("unknown crossover type '" + text + "' (expected one_point or discrete)");
}

std::vector<std::string> validate(const Config& config) {
    std::vector<std::string> errors;
    const auto require = [&errors](bool ok, const std::string& message) {
        if (!ok) {
            errors.push_back(message);
        }
    };

    require(config.population_size >= 2, "g2: population_size must be >= 2");
    require(config.genes_per_query >= 1, "g3: genes_per_query must be >= 1");
    if (config.crossover_type == CrossoverType::OnePoint) {
        require(config.genes_per_query >= 2, "g3: genes_per_query must be >= 2 with one_point crossover");
    }
    require(config.results_per_query >= 1, "f1: results_per_query must be >= 1");
    require(config.max_results_per_population >= 1, "f2: max_results_per_population must be >= 1");
    require(config.max_results_total >= 1, "f3: max_results_total must be >= 1");
    require(config.same_host_coeff >= 0.0 && config.same_host_coeff <= 1.0,
            "f4: same_host_coeff must be within [0, 1]");
    require(config.weight_position >= 0.0, "f5: weight_position must be >= 0");
    require(config.weight_recurrence >= 0.0, "f6: weight_recurrence must be >= 0");
    require(config.weight_similarity >= 0.0, "f7: weight_similarity must be >= 0");
    require(config.weight_position + config.weight_recurrence + config.weight_similarity > 0.0,
            "f5+f6+f7: at least one fitness weight must be positive");
    require(config.parent_criterion_mult >= 0.0, "c1: parent_criterion_mult must be >= 0");
    require(config.mutation_prob >= 0.0 && config.mutation_prob <= 1.0,
            "m1: mutation_prob must be within [0, 1]");
    require(config.synonym_swap_prob >= 0.0 && config.synonym_swap_prob <= 1.0,
            "synonym_swap_prob must be within [0, 1]");
    require(config.target_generations >= 0, "e1: target_generations must be >= 0");
    require(config.sigma_threshold >= 0.0, "e2: sigma_threshold must be >= 0");
    require(config.max_generations_cap >= 0, "e3: max_generations_cap must be >= 0");
    require(config.target_generations <= config.max_generations_cap,
            "e1 must be <= e3 (target_generations above the hard cap would never apply)");
    return errors;
}

Config parse_config(const std::string& text, const std::string& origin) {
    Config config;
    std::istringstream in(text);
    std::string raw;
    int line_number = 0;
    while (std::getline(in, raw)) {
        ++line_number;
        const auto comment = raw.find('#');
        if (comment != std::string::npos) {
            raw.erase(comment);
        }
        const std::string line = Trim(raw);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            Fail(origin, line_number, "expected 'key = value', got '" + line + "'");
        }
        const std::string key = Trim(line.substr(0, eq));
        const std::string value = Trim(line.substr(eq + 1));
        if (key.empty()) {
            Fail(origin, line_number, "missing key before '='");
        }

        try {
            if (key == "g1") {
                config.engine_kind = engine_kind_from_string(value);
            } else if (key == "g2") {
                config.population_size = static_cast<int>(ParseInt(value, origin, line_number, key));
            } else if (key == "g3") {
                config.genes_per_query = static_cast<int>(ParseInt(value, origin, line_number, key));
            } else if (key == "g4") {
                config.keyword_pool_path = value;
            } else if (key == "f1") {
                config.results_per_query = static_cast<int>(ParseInt(value, origin, line_number, key));
            } else if (key == "f2") {
                config.max_results_per_population = static_cast<int>(ParseInt(value, origin, line_number, key));
            } else if (key == "f3") {
                config.max_results_total = static_cast<int>(ParseInt(value, origin, line_number, key));
            } else if (key == "f4") {
                config.same_host_coeff = ParseDouble(value, origin, line_number, key);
            } else if (key == "f5") {
                config.weight_position = ParseDouble(value, origin, line_number, key);
            } else if (key == "f6") {
                config.weight_recurrence = ParseDouble(value, origin, line_number, key);
            } else if (key == "f7") {
                config.weight_similarity = ParseDouble(value, origin, line_number, key);
            } else if (key == "f8") {
                config.aggregation_mode = aggregation_mode_from_string(value);
            } else if (key == "c1") {
                config.parent_criterion_mult = ParseDouble(value, origin, line_number, key);
            } else if (key == "m1") {
                config.mutation_prob = ParseDouble(value, origin, line_number, key);
            } else if (key == "synonym_swap_prob") {
                config.synonym_swap_prob = ParseDouble(value, origin, line_number, key);
            } else if (key == "e1") {
                config.target_generations = static_cast<int>(ParseInt(value, origin, line_number, key));
            } else if (key == "e2") {
                config.sigma_threshold = ParseDouble(value, origin, line_number, key);
            } else if (key == "e3") {
                config.max_generations_cap = static_cast<int>(ParseInt(value, origin, line_number, key));
            } else if (key == "crossover_type") {
                config.crossover_type = crossover_type_from_string(value);
            } else if (key == "rng_seed") {
                config.rng_seed = ParseUint(value, origin, line_number, key);
            } else if (key == "autosave") {
                config.autosave = ParseBool(value, origin, line_number, key);
            } else if (key == "state_path") {
                config.state_path = value;
            } else {
                Fail(origin, line_number, "unknown key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            Fail(origin, line_number, key + ": invalid value '" + value + "'");
        }
    }

    const std::vector<std::string> errors = validate(config);
    if (!errors.empty()) {
        std::string message = origin + ": invalid configuration";
        for (const std::string& error : errors) {
            message += "\n  " + error;
        }
        throw ConfigError(message);
    }
    return config;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigIoError("cannot open config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

std::string config_to_text(const Config& config) {
    std::ostringstream out;
    out << "# engine and population shape\n";
    out << "g1 = " << to_string(config.engine_kind) << "\n";
    out << "g2 = " << config.population_size << "\n";
    out << "g3 = " << config.genes_per_query << "\n";
    out << "g4 = " << config.keyword_pool_path << "\n";
    out << "# retrieval and fitness\n";
    out << "f1 = " << config.results_per_query << "\n";
    out << "f2 = " << config.max_results_per_population << "\n";
    out << "f3 = " << config.max_results_total << "\n";
    out << "f4 = " << FormatDouble(config.same_host_coeff) << "\n";
    out << "f5 = " << FormatDouble(config.weight_position) << "\n";
    out << "f6 = " << FormatDouble(config.weight_recurrence) << "\n";
    out << "f7 = " << FormatDouble(config.weight_similarity) << "\n";
    out << "f8 = " << to_string(config.aggregation_mode) << "\n";
    out << "# operators\n";
    out << "c1 = " << FormatDouble(config.parent_criterion_mult) << "\n";
    out << "m1 = " << FormatDouble(config.mutation_prob) << "\n";
    out << "synonym_swap_prob = " << FormatDouble(config.synonym_swap_prob) << "\n";
    out << "crossover_type = " << to_string(config.crossover_type) << "\n";
    out << "# stopping\n";
    out << "e1 = " << config.target_generations << "\n";
    out << "e2 = " << FormatDouble(config.sigma_threshold) << "\n";
    out << "e3 = " << config.max_generations_cap << "\n";
    out << "# run control\n";
    out << "rng_seed = " << config.rng_seed << "\n";
    out << "autosave = " << (config.autosave ? "true" : "false") << "\n";
    out << "state_path = " << config.state_path << "\n";
    return out.str();
}

void save_config(const Config& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigIoError("cannot write config file: " + path);
    }
    out << config_to_text(config);
    if (!out) {
        throw ConfigIoError("failed writing config file: " + path);
    }
}

}  // namespace gaf
