#include <iostream>

#include "ratdyn/cli.hpp"

int main(int argc, char** argv) { return ratdyn::run_cli(argc, argv, std::cout, std::cerr); }
