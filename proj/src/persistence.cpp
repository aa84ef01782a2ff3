#include "gaf/persistence.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace gaf {
namespace {

using Json = nlohmann::ordered_json;

Json GeneToJson(const Gene& gene) {
    return Json{{"Lemma", gene.lemma}, {"Surface", gene.surface}};
}

Json HitToJson(const SearchHit& hit) {
    return Json{{"Location", hit.location},
                {"Title", hit.title},
                {"Snippet", hit.snippet},
                {"Engine", hit.engine},
                {"Rank", hit.rank}};
}

Json ResourceToJson(const Resource& resource) {
    Json appearances = Json::array();
    for (const Appearance& appearance : resource.appearances) {
        appearances.push_back(
            Json{{"QueryNumber", appearance.query_index}, {"Rank", appearance.rank}});
    }
    return Json{{"Location", resource.location},
                {"Title", resource.title},
                {"Snippet", resource.snippet},
                {"TrueContent", resource.true_content},
                {"Appearances", std::move(appearances)},
                {"FitnessAttributes", Json{{"PBar", resource.attrs.p_bar},
                                           {"PScore", resource.attrs.p_score},
                                           {"R", resource.attrs.r},
                                           {"RScore", resource.attrs.r_score},
                                           {"S", resource.attrs.s},
                                           {"W", resource.attrs.w}}}};
}

Json QueryToJson(const Query& query) {
    Json genes = Json::array();
    for (const Gene& gene : query.genes) {
        genes.push_back(GeneToJson(gene));
    }
    Json results = Json::array();
    for (const SearchHit& hit : query.results) {
        results.push_back(HitToJson(hit));
    }
    return Json{{"QueryText", query.query_text},
                {"Genes", std::move(genes)},
                {"SearchResults", std::move(results)},
                {"Fitness", query.fitness}};
}

Json PopulationToJson(const Population& population) {
    Json individuals = Json::array();
    for (const Query& query : population.queries) {
        individuals.push_back(QueryToJson(query));
    }
    Json resources = Json::array();
    for (const Resource& resource : population.resources) {
        resources.push_back(ResourceToJson(resource));
    }
    return Json{{"GenerationNumber", population.generation_number},
                {"Individuals", std::move(individuals)},
                {"Resources", std::move(resources)},
                {"Fitness", population.fitness},
                {"SigmaFitness", population.sigma_fitness}};
}

Json OptionsToJson(const Config& config) {
    return Json{{"g1", to_string(config.engine_kind)},
                {"g2", config.population_size},
                {"g3", config.genes_per_query},
                {"g4", config.keyword_pool_path},
                {"f1", config.results_per_query},
                {"f2", config.max_results_per_population},
                {"f3", config.max_results_total},
                {"f4", config.same_host_coeff},
                {"f5", config.weight_position},
                {"f6", config.weight_recurrence},
                {"f7", config.weight_similarity},
                {"f8", to_string(config.aggregation_mode)},
                {"c1", config.parent_criterion_mult},
                {"m1", config.mutation_prob},
                {"synonym_swap_prob", config.synonym_swap_prob},
                {"e1", config.target_generations},
                {"e2", config.sigma_threshold},
                {"e3", config.max_generations_cap},
                {"crossover_type", to_string(config.crossover_type)},
                {"rng_seed", config.rng_seed},
                {"autosave", config.autosave},
                {"state_path", config.state_path}};
}

// --- reading ----------------------------------------------------------------

// Walks the parsed document, remembering the path for error messages.
struct Cursor {
    const Json* node;
    std::string path;

    [[noreturn]] void fail(const std::string& message) const {
        throw PersistenceError(path + ": " + message);
    }

    Cursor at(const char* key) const {
        if (!node->is_object()) {
            fail("expected an object");
        }
        const auto found = node->find(key);
        if (found == node->end()) {
            fail(std::string("missing element ") + key);
        }
        return Cursor{&*found, path + "." + key};
    }

    Cursor item(std::size_t index) const {
        return Cursor{&(*node)[index], path + "[" + std::to_string(index) + "]"};
    }

    std::size_t array_size() const {
        if (!node->is_array()) {
            fail("expected an array");
        }
        return node->size();
    }

    int as_int() const {
        if (!node->is_number_integer()) {
            fail("expected an integer");
        }
        return node->get<int>();
    }

    std::uint64_t as_uint64() const {
        if (!node->is_number_unsigned() && !node->is_number_integer()) {
            fail("expected an unsigned integer");
        }
        return node->get<std::uint64_t>();
    }

    double as_double() const {
        if (!node->is_number()) {
            fail("expected a number");
        }
        return node->get<double>();
    }

    bool as_bool() const {
        if (!node->is_boolean()) {
            fail("expected a boolean");
        }
        return node->get<bool>();
    }

    std::string as_string() const {
        if (!node->is_string()) {
            fail("expected a string");
        }
        return node->get<std::string>();
    }
};

Gene GeneFromJson(const Cursor& cursor) {
    return Gene{cursor.at("Lemma").as_string(), cursor.at("Surface").as_string()};
}

SearchHit HitFromJson(const Cursor& cursor) {
    SearchHit hit;
    hit.location = cursor.at("Location").as_string();
    hit.title = cursor.at("Title").as_string();
    hit.snippet = cursor.at("Snippet").as_string();
    hit.engine = cursor.at("Engine").as_string();
    hit.rank = cursor.at("Rank").as_int();
    return hit;
}

Resource ResourceFromJson(const Cursor& cursor) {
    Resource resource;
    resource.location = cursor.at("Location").as_string();
    resource.title = cursor.at("Title").as_string();
    resource.snippet = cursor.at("Snippet").as_string();
    const Cursor content = cursor.at("TrueContent");
    for (std::size_t i = 0; i < content.array_size(); ++i) {
        resource.true_content.push_back(content.item(i).as_string());
    }
    const Cursor appearances = cursor.at("Appearances");
    for (std::size_t i = 0; i < appearances.array_size(); ++i) {
        const Cursor entry = appearances.item(i);
        resource.appearances.push_back(
            Appearance{entry.at("QueryNumber").as_int(), entry.at("Rank").as_int()});
    }
    const Cursor attrs = cursor.at("FitnessAttributes");
    resource.attrs.p_bar = attrs.at("PBar").as_double();
    resource.attrs.p_score = attrs.at("PScore").as_double();
    resource.attrs.r = attrs.at("R").as_int();
    resource.attrs.r_score = attrs.at("RScore").as_double();
    resource.attrs.s = attrs.at("S").as_double();
    resource.attrs.w = attrs.at("W").as_double();
    return resource;
}

Query QueryFromJson(const Cursor& cursor) {
    Query query;
    query.query_text = cursor.at("QueryText").as_string();
    const Cursor genes = cursor.at("Genes");
    for (std::size_t i = 0; i < genes.array_size(); ++i) {
        query.genes.push_back(GeneFromJson(genes.item(i)));
    }
    const Cursor results = cursor.at("SearchResults");
    for (std::size_t i = 0; i < results.array_size(); ++i) {
        query.results.push_back(HitFromJson(results.item(i)));
    }
    query.fitness = cursor.at("Fitness").as_double();
    return query;
}

Population PopulationFromJson(const Cursor& cursor) {
    Population population;
    population.generation_number = cursor.at("GenerationNumber").as_int();
    const Cursor individuals = cursor.at("Individuals");
    for (std::size_t i = 0; i < individuals.array_size(); ++i) {
        population.queries.push_back(QueryFromJson(individuals.item(i)));
    }
    const Cursor resources = cursor.at("Resources");
    for (std::size_t i = 0; i < resources.array_size(); ++i) {
        population.resources.push_back(ResourceFromJson(resources.item(i)));
    }
    population.fitness = cursor.at("Fitness").as_double();
    population.sigma_fitness = cursor.at("SigmaFitness").as_double();
    return population;
}

Config ConfigFromJson(const Cursor& cursor) {
    Config config;
    try {
        config.engine_kind = engine_kind_from_string(cursor.at("g1").as_string());
        config.aggregation_mode = aggregation_mode_from_string(cursor.at("f8").as_string());
        config.crossover_type = crossover_type_from_string(cursor.at("crossover_type").as_string());
    } catch (const ConfigError& error) {
        cursor.fail(error.what());
    }
    config.population_size = cursor.at("g2").as_int();
    config.genes_per_query = cursor.at("g3").as_int();
    config.keyword_pool_path = cursor.at("g4").as_string();
    config.results_per_query = cursor.at("f1").as_int();
    config.max_results_per_population = cursor.at("f2").as_int();
    config.max_results_total = cursor.at("f3").as_int();
    config.same_host_coeff = cursor.at("f4").as_double();
    config.weight_position = cursor.at("f5").as_double();
    config.weight_recurrence = cursor.at("f6").as_double();
    config.weight_similarity = cursor.at("f7").as_double();
    config.parent_criterion_mult = cursor.at("c1").as_double();
    config.mutation_prob = cursor.at("m1").as_double();
    config.synonym_swap_prob = cursor.at("synonym_swap_prob").as_double();
    config.target_generations = cursor.at("e1").as_int();
    config.sigma_threshold = cursor.at("e2").as_double();
    config.max_generations_cap = cursor.at("e3").as_int();
    config.rng_seed = cursor.at("rng_seed").as_uint64();
    config.autosave = cursor.at("autosave").as_bool();
    config.state_path = cursor.at("state_path").as_string();
    return config;
}

void ValidatePopulation(const Population& population, const Config& config, const Cursor& cursor,
                        bool must_be_initial) {
    if (population.queries.empty() && population.resources.empty()) {
        return;  // pre-start placeholder
    }
    if (population.queries.size() != static_cast<std::size_t>(config.population_size)) {
        cursor.fail("expected " + std::to_string(config.population_size) + " individuals, found " +
                    std::to_string(population.queries.size()));
    }
    if (must_be_initial && population.generation_number != 0) {
        cursor.fail("initial population must have GenerationNumber 0");
    }
    for (std::size_t i = 0; i < population.queries.size(); ++i) {
        const Query& query = population.queries[i];
        const Cursor at = cursor.at("Individuals").item(i);
        if (query.genes.size() != static_cast<std::size_t>(config.genes_per_query)) {
            at.fail("expected " + std::to_string(config.genes_per_query) + " genes, found " +
                    std::to_string(query.genes.size()));
        }
        std::set<std::string> lemmas;
        for (const Gene& gene : query.genes) {
            if (!lemmas.insert(gene.lemma).second) {
                at.fail("duplicate gene lemma '" + gene.lemma + "'");
            }
        }
    }
    for (std::size_t i = 0; i < population.resources.size(); ++i) {
        const Resource& resource = population.resources[i];
        const Cursor at = cursor.at("Resources").item(i);
        if (resource.appearances.empty()) {
            at.fail("resource without appearances");
        }
        int previous_query = -1;
        for (const Appearance& appearance : resource.appearances) {
            if (appearance.query_index <= previous_query) {
                at.fail("appearances out of order");
            }
            previous_query = appearance.query_index;
            if (appearance.query_index < 0 ||
                appearance.query_index >= static_cast<int>(population.queries.size())) {
                at.fail("appearance query index out of range");
            }
            if (appearance.rank < 1 || appearance.rank > config.results_per_query) {
                at.fail("appearance rank outside [1, f1]");
            }
        }
        if (resource.attrs.r != static_cast<int>(resource.appearances.size())) {
            at.fail("R does not match the appearance count");
        }
    }
    if (population.resources.size() > static_cast<std::size_t>(config.max_results_per_population)) {
        cursor.fail("more resources than f2 allows");
    }
    std::vector<double> fitnesses;
    for (const Query& query : population.queries) {
        fitnesses.push_back(query.fitness);
    }
    if (population.fitness != population_fitness(fitnesses, config.aggregation_mode)) {
        cursor.fail("Fitness is inconsistent with the individuals' fitness values");
    }
    if (population.sigma_fitness != sigma_fitness(fitnesses)) {
        cursor.fail("SigmaFitness is inconsistent with the individuals' fitness values");
    }
}

}  // namespace

std::string state_to_text(const RunState& state) {
    Json keywords = Json::array();
    for (const Gene& gene : state.keyword_pool) {
        keywords.push_back(GeneToJson(gene));
    }
    Json populations = Json::array();
    for (const GenerationSummary& summary : state.history) {
        populations.push_back(Json{{"GenerationNumber", summary.generation_number},
                                   {"Fitness", summary.fitness},
                                   {"SigmaFitness", summary.sigma_fitness},
                                   {"BestQueryText", summary.best_query_text},
                                   {"Mutations", summary.mutations}});
    }
    Json all_resources = Json::array();
    for (const Resource& resource : state.all_resources) {
        all_resources.push_back(ResourceToJson(resource));
    }

    const Json document =
        Json{{"GAF", Json{{"FormatVersion", kStateFormatVersion},
                          {"ErrorText", state.error_text},
                          {"KeyWords", std::move(keywords)},
                          {"AllKeyWordsSeen", state.synonym_lemmas_seen},
                          {"Options", OptionsToJson(state.config)},
                          {"Populations", std::move(populations)},
                          {"InitPopulation", PopulationToJson(state.init_population)},
                          {"CurrentPopulation", PopulationToJson(state.current_population)},
                          {"AllResources", std::move(all_resources)},
                          {"StopReason", to_string(state.stop_reason)},
                          {"RngState", state.rng.serialize()}}}};
    return document.dump(2) + "\n";
}

void save_state(const RunState& state, const std::string& path) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path temp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw PersistenceError("cannot write state file: " + temp.string());
        }
        out << state_to_text(state);
        out.flush();
        if (!out) {
            throw PersistenceError("failed writing state file: " + temp.string());
        }
    }
    std::error_code rename_error;
    fs::rename(temp, target, rename_error);
    if (rename_error) {
        throw PersistenceError("cannot move state file into place: " + rename_error.message());
    }
}

RunState state_from_text(const std::string& text, const std::string& origin) {
    Json document;
    try {
        document = Json::parse(text);
    } catch (const nlohmann::json::exception& error) {
        throw PersistenceError(origin + ": not a parseable state document: " + error.what());
    }

    const Cursor root{&document, origin};
    const Cursor gaf = root.at("GAF");

    const int version = gaf.at("FormatVersion").as_int();
    if (version != kStateFormatVersion) {
        gaf.at("FormatVersion")
            .fail("unsupported format version " + std::to_string(version) + ", expected " +
                  std::to_string(kStateFormatVersion));
    }

    RunState state;
    state.error_text = gaf.at("ErrorText").as_string();

    const Cursor keywords = gaf.at("KeyWords");
    for (std::size_t i = 0; i < keywords.array_size(); ++i) {
        state.keyword_pool.push_back(GeneFromJson(keywords.item(i)));
    }
    const Cursor seen = gaf.at("AllKeyWordsSeen");
    for (std::size_t i = 0; i < seen.array_size(); ++i) {
        state.synonym_lemmas_seen.push_back(seen.item(i).as_string());
    }

    state.config = ConfigFromJson(gaf.at("Options"));
    const std::vector<std::string> config_errors = validate(state.config);
    if (!config_errors.empty()) {
        std::string message = "invalid Options";
        for (const std::string& error : config_errors) {
            message += "\n  " + error;
        }
        gaf.at("Options").fail(message);
    }

    const Cursor populations = gaf.at("Populations");
    int previous_generation = -1;
    for (std::size_t i = 0; i < populations.array_size(); ++i) {
        const Cursor entry = populations.item(i);
        GenerationSummary summary;
        summary.generation_number = entry.at("GenerationNumber").as_int();
        summary.fitness = entry.at("Fitness").as_double();
        summary.sigma_fitness = entry.at("SigmaFitness").as_double();
        summary.best_query_text = entry.at("BestQueryText").as_string();
        summary.mutations = entry.at("Mutations").as_int();
        if (summary.generation_number <= previous_generation) {
            entry.fail("generation numbers must increase");
        }
        previous_generation = summary.generation_number;
        state.history.push_back(std::move(summary));
    }

    state.init_population = PopulationFromJson(gaf.at("InitPopulation"));
    state.current_population = PopulationFromJson(gaf.at("CurrentPopulation"));
    ValidatePopulation(state.init_population, state.config, gaf.at("InitPopulation"), true);
    ValidatePopulation(state.current_population, state.config, gaf.at("CurrentPopulation"), false);

    const Cursor all_resources = gaf.at("AllResources");
    for (std::size_t i = 0; i < all_resources.array_size(); ++i) {
        state.all_resources.push_back(ResourceFromJson(all_resources.item(i)));
    }
    if (state.all_resources.size() > static_cast<std::size_t>(state.config.max_results_total)) {
        gaf.at("AllResources").fail("more resources than f3 allows");
    }

    try {
        state.stop_reason = stop_reason_from_string(gaf.at("StopReason").as_string());
    } catch (const std::invalid_argument& error) {
        gaf.at("StopReason").fail(error.what());
    }
    try {
        state.rng = Rng::deserialize(gaf.at("RngState").as_string());
    } catch (const std::invalid_argument& error) {
        gaf.at("RngState").fail(error.what());
    }
    return state;
}

RunState load_state(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw PersistenceError("cannot open state file: " + path);
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return state_from_text(text, path);
}

}  // namespace gaf
