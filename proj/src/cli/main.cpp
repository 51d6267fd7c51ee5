#include <iostream>

#include "horizonlab/cli.hpp"

int main(int argc, char** argv) {
    try {
        return horizonlab::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "horizonlab: " << e.what() << "\n";
        return 1;
    }
}
