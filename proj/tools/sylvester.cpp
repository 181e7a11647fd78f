#include <iostream>

#include "sylvester/cli.hpp"

int main(int argc, char** argv) { return sylvester::cli::run(argc, argv, std::cout, std::cerr); }
