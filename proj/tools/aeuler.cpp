#include <iostream>

#include "aeuler/run.hpp"

int main(int argc, char** argv) { return aeuler::cli_main(argc, argv, std::cout, std::cerr); }
