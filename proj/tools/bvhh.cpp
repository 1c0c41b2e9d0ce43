#include <iostream>

#include "bvhh/driver.hpp"

int main(int argc, char** argv) {
    return bvhh::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
