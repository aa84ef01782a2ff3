#include "gaf/cli.hpp"

int main(int argc, char** argv) { return gaf::cli_main(argc, argv); }
