#include <iostream>

#include "cqkd/cli/commands.hpp"

int main(int argc, char** argv) { return cqkd::cli::run(argc, argv, std::cout, std::cerr); }
