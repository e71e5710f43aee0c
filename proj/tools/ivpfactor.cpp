#include <iostream>

#include "ivp/cli.hpp"

int main(int argc, char** argv) { return ivp::cli::run(argc, argv, std::cout, std::cerr); }
