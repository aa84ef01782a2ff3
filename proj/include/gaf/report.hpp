#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gaf/evolve.hpp"

namespace gaf {

// One rendering source for both the human-readable and the --json output.
struct GenerationRow {
    int generation = 0;
    double fitness = 0.0;
    double sigma = 0.0;
    std::string best_query;
    int mutations = 0;
};

struct ResourceRow {
    std::string location;
    std::string title;
    double w = 0.0;
    double p_bar = 0.0;
    int r = 0;
    double s = 0.0;
};

struct RunReport {
    std::uint64_t seed = 0;
    std::string engine;
    std::string stop_reason;
    std::string error_text;
    std::optional<double> duration_seconds;  // absent for inspect
    int total_resources = 0;
    std::vector<GenerationRow> generations;
    std::vector<ResourceRow> top_resources;
};

// top_k caps the resource rows; the generation table covers the whole history.
RunReport build_report(const RunState& state, int top_k);

void print_report(const RunReport& report, std::ostream& out);

std::string report_to_json_text(const RunReport& report);

}  // namespace gaf
