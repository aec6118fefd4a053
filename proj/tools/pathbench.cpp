#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return pathbench::cli::run_cli(argc, argv, std::cout, std::cerr); }
