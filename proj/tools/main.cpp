#include <iostream>
#include <string>
#include <vector>

#include "k3fm_cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return k3fm::cli::run(args, std::cout, std::cerr);
}
