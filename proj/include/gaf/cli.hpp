#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gaf {

// Exit codes: 0 success, 1 invalid arguments or unloadable inputs, 2 config
// validation failure, 3 run finished with stop reason Error (or the engine
// failed outright), 4 resume of an already-terminal state.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace gaf
