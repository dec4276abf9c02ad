#include <iostream>

#include "cfdyn/cli.hpp"

int main(int argc, char** argv) { return cfdyn::cli::run(argc, argv, std::cout, std::cerr); }
