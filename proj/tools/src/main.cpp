#include <iostream>

#include "nlqm_cli/commands.hpp"

int main(int argc, char** argv) { return nlqm::cli::run(argc, argv, std::cout, std::cerr); }
