#include <iostream>

#include "uavnet/cli.hpp"

int main(int argc, char** argv) { return uavnet::cli::main(argc, argv, std::cout, std::cerr); }
