#include <iostream>

#include "multdens/cli.hpp"

int main(int argc, char** argv) { return multdens::cli::main_entry(argc, argv, std::cout, std::cerr); }
