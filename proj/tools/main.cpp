#include <iostream>

#include "ffseq/cli.hpp"

int main(int argc, char** argv) { return ffseq::cli::run(argc, argv, std::cout, std::cerr); }
