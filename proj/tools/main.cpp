#include <iostream>

#include "circprop/cli.hpp"

int main(int argc, char** argv) { return circprop::cli::run(argc, argv, std::cout, std::cerr); }
