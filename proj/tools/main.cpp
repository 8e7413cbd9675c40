#include <iostream>
#include <vector>

#include "crocker/commands.hpp"

int main(int argc, char** argv) {
    const std::vector<const char*> args(argv, argv + argc);
    return crocker::run_cli(args, std::cout, std::cerr);
}
