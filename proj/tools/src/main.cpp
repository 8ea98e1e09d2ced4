#include <iostream>

#include "qhkit/cli.hpp"

int main(int argc, char** argv) {
    return qhkit::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
