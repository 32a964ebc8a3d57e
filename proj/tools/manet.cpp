#include "manet/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return manet::cli::run_cli(argc, argv, std::cout, std::cerr);
}
