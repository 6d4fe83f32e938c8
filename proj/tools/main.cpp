#include <iostream>

#include "oddbal/cli.hpp"

int main(int argc, char** argv) { return oddbal::cli::run(argc, argv, std::cout, std::cerr); }
