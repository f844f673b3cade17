#include <iostream>

#include "dagfix/cli.hpp"

int main(int argc, char** argv) { return dagfix::cli::run_cli(argc, argv, std::cout, std::cerr); }
