#include <iostream>

#include "landis_cli/cli.hpp"

int main(int argc, char** argv) { return landis::cli::run(argc, argv, std::cout, std::cerr); }
