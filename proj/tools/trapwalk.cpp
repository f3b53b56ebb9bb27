#include <iostream>

#include "trapwalk/cli.hpp"

int main(int argc, char** argv) { return trapwalk::cli::run_cli(argc, argv, std::cout, std::cerr); }
