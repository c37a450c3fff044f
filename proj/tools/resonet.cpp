// resonet.cpp — Command-line entry point

#include <iostream>
#include <string>
#include <vector>

#include "resonet/commands.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return resonet::cli::run(args, std::cout, std::cerr);
}
