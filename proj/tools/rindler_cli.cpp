#include <iostream>

#include "rindler/cli.hpp"

int main(int argc, char** argv) { return rindler::cli::cli_main(argc, argv, std::cout, std::cerr); }
