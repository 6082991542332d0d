#include "kappa/commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return kappa::run_command(argc, argv, std::cout, std::cerr);
}
