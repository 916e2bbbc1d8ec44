#include <iostream>
#include <string>
#include <vector>

#include "rotorlin/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return rotorlin::dispatch(args, std::cout, std::cerr);
}
