#include <iostream>

#include "odadvcs/cli.hpp"

int main(int argc, char** argv) {
    return odadvcs::cli::run(argc, argv, std::cout, std::cerr);
}
