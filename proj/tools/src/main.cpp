#include <iostream>

#include "brownspec_cli/commands.hpp"

int main(int argc, char** argv) { return brownspec::cli::run(argc, argv, std::cout, std::cerr); }
