#include <iostream>

#include "epschain/cli.hpp"

int main(int argc, char** argv) { return epschain::cli::run(argc, argv, std::cout, std::cerr); }
