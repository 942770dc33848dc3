#include "cylbuck/cli.hpp"

int main(int argc, char** argv) { return cylbuck::run_cli(argc, argv); }
