#include <iostream>

#include "effg/cli.hpp"

int main(int argc, char **argv) { return effg::cli::run(argc, argv, std::cout, std::cerr); }
