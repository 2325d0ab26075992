#include "qg/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qg::run_cli(argc, argv, std::cout, std::cerr); }
