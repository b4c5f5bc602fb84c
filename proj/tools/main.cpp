#include <iostream>

#include "extalg/cli.hpp"

int main(int argc, char** argv) {
    return extalg::cli::dispatch_argv(argc, argv, std::cout, std::cerr);
}
