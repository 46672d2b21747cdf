#include <iostream>

#include "duopoly/cli/app.hpp"

int main(int argc, char** argv) { return duopoly::cli::run(argc, argv, std::cout, std::cerr); }
