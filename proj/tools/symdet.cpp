#include "symdet/cli.hpp"

int main(int argc, char** argv) { return symdet::cli::run(argc, argv); }
