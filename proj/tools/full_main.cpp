#include <iostream>

#include "full/cli.hpp"

int main(int argc, char** argv) { return full::cli_main(argc, argv, std::cout, std::cerr); }
