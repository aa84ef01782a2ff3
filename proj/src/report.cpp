#include "gaf/report.hpp"

#include <iomanip>

#include <json.hpp>

namespace gaf {

RunReport build_report(const RunState& state, int top_k) {
    RunReport report;
    report.seed = state.config.rng_seed;
    report.engine = to_string(state.config.engine_kind);
    report.stop_reason = to_string(state.stop_reason);
    report.error_text = state.error_text;
    report.total_resources = static_cast<int>(state.all_resources.size());
    for (const GenerationSummary& summary : state.history) {
        report.generations.push_back(GenerationRow{summary.generation_number, summary.fitness,
                                                   summary.sigma_fitness, summary.best_query_text,
                                                   summary.mutations});
    }
    const std::size_t keep = top_k < 0 ? 0 : static_cast<std::size_t>(top_k);
    for (std::size_t i = 0; i < state.all_resources.size() && i < keep; ++i) {
        const Resource& resource = state.all_resources[i];
        report.top_resources.push_back(ResourceRow{resource.location, resource.title,
                                                   resource.attrs.w, resource.attrs.p_bar,
                                                   resource.attrs.r, resource.attrs.s});
    }
    return report;
}

void print_report(const RunReport& report, std::ostream& out) {
    out << "seed: " << report.seed << "  engine: " << report.engine
        << "  stop: " << report.stop_reason;
    if (report.duration_seconds) {
        out << "  duration: " << std::fixed << std::setprecision(2) << *report.duration_seconds
            << "s" << std::defaultfloat;
    }
    out << "\n";
    if (!report.error_text.empty()) {
        out << "error: " << report.error_text << "\n";
    }

    out << "\ngeneration    fitness      sigma  mutations  best query\n";
    for (const GenerationRow& row : report.generations) {
        out << std::setw(10) << row.generation << "  " << std::fixed << std::setprecision(6)
            << std::setw(9) << row.fitness << "  " << std::setw(9) << row.sigma
            << std::defaultfloat << "  " << std::setw(9) << row.mutations << "  " << row.best_query
            << "\n";
    }

    out << "\ntop resources (" << report.top_resources.size() << " of " << report.total_resources
        << "):\n";
    for (const ResourceRow& row : report.top_resources) {
        out << "  w=" << std::fixed << std::setprecision(4) << row.w << " p=" << row.p_bar
            << " r=" << row.r << " s=" << row.s << std::defaultfloat << "  " << row.location;
        if (!row.title.empty()) {
            out << "  \"" << row.title << "\"";
        }
        out << "\n";
    }
}

std::string report_to_json_text(const RunReport& report) {
    nlohmann::ordered_json generations = nlohmann::ordered_json::array();
    for (const GenerationRow& row : report.generations) {
        generations.push_back({{"Generation", row.generation},
                               {"Fitness", row.fitness},
                               {"Sigma", row.sigma},
                               {"BestQuery", row.best_query},
                               {"Mutations", row.mutations}});
    }
    nlohmann::ordered_json resources = nlohmann::ordered_json::array();
    for (const ResourceRow& row : report.top_resources) {
        resources.push_back({{"Location", row.location},
                             {"Title", row.title},
                             {"W", row.w},
                             {"PBar", row.p_bar},
                             {"R", row.r},
                             {"S", row.s}});
    }
    nlohmann::ordered_json document{{"Seed", report.seed},
                                    {"Engine", report.engine},
                                    {"StopReason", report.stop_reason},
                                    {"ErrorText", report.error_text},
                                    {"TotalResources", report.total_resources},
                                    {"Generations", std::move(generations)},
                                    {"TopResources", std::move(resources)}};
    if (report.duration_seconds) {
        document["DurationSeconds"] = *report.duration_seconds;
    }
    return document.dump(2) + "\n";
}

}  // namespace gaf
