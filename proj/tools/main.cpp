#include <iostream>
#include <string>
#include <vector>

#include "mori/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mori::cli_run(args, std::cout, std::cerr, std::cin);
}
