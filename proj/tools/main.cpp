#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return hyp3term::cli::run(argc, argv, std::cout, std::cerr); }
