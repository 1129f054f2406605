#include <iostream>

#include "rotodyne/cli.hpp"

int main(int argc, char** argv) { return rotodyne::run_cli(argc, argv, std::cout, std::cerr); }
