#include "digraphe/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    return digraphe::cli::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
