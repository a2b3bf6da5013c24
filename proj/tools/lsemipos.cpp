#include <iostream>

#include "lorentz/cli.hpp"

int main(int argc, char **argv) { return lorentz::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
