#include <iostream>

#include "kzm/cli.hpp"

int main(int argc, char** argv) { return kzm::cli::run(argc, argv, std::cout, std::cerr); }
