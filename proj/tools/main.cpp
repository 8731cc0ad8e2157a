#include "causalflow/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return causalflow::run(argc, argv, std::cout, std::cerr);
}
