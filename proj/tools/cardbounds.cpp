#include <iostream>

#include "cardbounds/cli.hpp"

int main(int argc, char** argv) {
    return cardbounds::cli_main(argc, argv, std::cout, std::cerr);
}
