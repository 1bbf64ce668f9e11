#include <iostream>
#include <string>
#include <vector>

#include "lindet/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return lindet::run_cli(args, std::cout, std::cerr);
}
