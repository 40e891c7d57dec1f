#include <iostream>

#include "symp/cli.hpp"

int main(int argc, char** argv) { return symp::cli::run_cli(argc, argv, std::cout, std::cerr); }
