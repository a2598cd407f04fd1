#include <iostream>

#include "frobsub/cli.hpp"

int main(int argc, char** argv) {
    return frobsub::run_cli(argc, argv, std::cout, std::cerr);
}
