#include "piq/cli.hpp"

int main(int argc, char **argv)
{
    return piq::run_cli(argc, argv, std::cout, std::cerr);
}
