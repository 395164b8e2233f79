#include "kbound/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return kbound::cli_main(argc, argv, std::cout, std::cerr); }
