#include "fdlab/cli.hpp"

int main(int argc, char** argv) { return fdlab::cli::run(argc, argv); }
