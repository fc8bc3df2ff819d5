#include <iostream>

#include "splitkit/cli.hpp"

int main(int argc, char** argv) { return splitkit::run_cli(argc, argv, std::cout, std::cerr); }
