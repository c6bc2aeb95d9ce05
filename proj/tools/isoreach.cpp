#include <iostream>

#include "isoreach/cli.hpp"

int main(int argc, char** argv) { return isoreach::run_cli(argc, argv, std::cout, std::cerr); }
