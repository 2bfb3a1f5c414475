#include "fspair/cli.hpp"

int main(int argc, char** argv) { return fspair::cli::run(argc, argv); }
