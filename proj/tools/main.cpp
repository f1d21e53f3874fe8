#include <iostream>

#include "prisparse/cli.hpp"

int main(int argc, char** argv) { return prisparse::run_cli(argc, argv, std::cout, std::cerr); }
