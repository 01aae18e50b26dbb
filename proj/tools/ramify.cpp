#include "ramify/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return ramify::cli_main(argc, argv, std::cout, std::cerr);
}
