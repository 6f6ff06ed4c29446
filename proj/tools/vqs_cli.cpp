#include "vqs/harness.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return vqs::cli_main(argc, argv, std::cout, std::cerr);
}
