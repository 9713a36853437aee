#include <iostream>

#include "classext/cli.hpp"

int main(int argc, char** argv) { return classext::cli::run(argc, argv, std::cout, std::cerr); }
