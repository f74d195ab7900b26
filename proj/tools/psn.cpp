#include <iostream>

#include "psn/cli.hpp"

int main(int argc, char** argv) { return psn::cli::main(argc, argv, std::cout, std::cerr); }
