#include "contractmon/cli.hpp"

int main(int argc, char **argv) { return contractmon::cli::run(argc, argv, std::cout, std::cerr); }
