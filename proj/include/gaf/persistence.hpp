#pragma once

#include <stdexcept>
#include <string>

#include "gaf/evolve.hpp"

namespace gaf {

struct PersistenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kStateFormatVersion = 1;

// Serializes the full run state as one deterministic JSON document under the
// GAF root element. Identical states produce byte-identical text.
std::string state_to_text(const RunState& state);

// Writes via a temp file in the target directory plus an atomic rename, so a
// crash mid-save never leaves a half-written state behind.
void save_state(const RunState& state, const std::string& path);

// Parses and validates; errors carry the failing path into the document.
RunState state_from_text(const std::string& text, const std::string& origin = "<string>");
RunState load_state(const std::string& path);

}  // namespace gaf
