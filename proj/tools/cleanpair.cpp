#include <iostream>

#include "cleanpair/cli.hpp"

int main(int argc, char** argv) { return cleanpair::cli_main(argc, argv, std::cout, std::cerr); }
