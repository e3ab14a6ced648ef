#include <iostream>

#include "pmathieu/cli.hpp"

int main(int argc, char** argv) { return pmathieu::run_cli(argc, argv, std::cout, std::cerr); }
