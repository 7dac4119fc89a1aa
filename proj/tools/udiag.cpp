#include <iostream>

#include "udiag/cli.hpp"

int main(int argc, char** argv) { return udiag::run_cli(argc, argv, std::cout, std::cerr); }
