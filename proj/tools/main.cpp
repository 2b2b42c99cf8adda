#include "sparsecert/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sparsecert::runCommand(argc, argv, std::cout, std::cerr); }
