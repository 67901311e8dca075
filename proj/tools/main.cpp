#include <iostream>

#include "transrep/cli.hpp"

int main(int argc, char** argv) { return transrep::cli_main(argc, argv, std::cout, std::cerr); }
