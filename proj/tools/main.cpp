#include <iostream>

#include "hardcount/cli.hpp"

int main(int argc, char** argv) {
    return hardcount::run_cli(argc, argv, std::cout, std::cerr);
}
