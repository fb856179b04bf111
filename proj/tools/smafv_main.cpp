#include <iostream>

#include "smafv/cli.hpp"

int main(int argc, char** argv) { return smafv::run_cli(argc, argv, std::cout, std::cerr); }
