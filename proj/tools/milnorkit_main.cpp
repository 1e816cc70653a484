#include "milnorkit/cli.hpp"

int main(int argc, char** argv) { return milnorkit::cli::run(argc, argv); }
