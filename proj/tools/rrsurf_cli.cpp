#include "rrsurf/cli.hpp"

int main(int argc, char** argv) { return rrsurf::cli_run(argc, argv); }
