#include <iostream>

#include "sjk/cli.hpp"

int main(int argc, char** argv) { return sjk::cli::run(argc, argv, std::cout, std::cerr); }
