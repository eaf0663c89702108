#include <iostream>

#include "dagpart/cli/commands.hpp"

int main(int argc, char** argv) { return dagpart::cli::run(argc, argv, std::cout, std::cerr); }
