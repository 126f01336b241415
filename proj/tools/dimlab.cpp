#include <iostream>

#include "dimlab/cli.hpp"

int main(int argc, char** argv) { return dimlab::run_cli(argc, argv, std::cout, std::cerr); }
