#include <iostream>

#include "bsingular/cli.hpp"

int main(int argc, char** argv) { return bsingular::run_cli(argc, argv, std::cout, std::cerr); }
