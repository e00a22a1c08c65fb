#include <iostream>

#include "spacenet/cli/cli.hpp"

int main(int argc, char** argv) { return spacenet::run_cli(argc, argv, std::cout, std::cerr); }
