#include <iostream>

#include "repower/cli/cli.hpp"

int main(int argc, char** argv)
{
    return repower::cli::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
