#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) { return morpho::cli::run(argc, argv, std::cout, std::cerr); }
