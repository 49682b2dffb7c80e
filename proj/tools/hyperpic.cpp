#include <iostream>

#include "hyperpic/cli.hpp"

int main(int argc, char** argv) { return hyperpic::cli::run(argc, argv, std::cout, std::cerr); }
