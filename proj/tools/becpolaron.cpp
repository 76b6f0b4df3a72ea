#include "becpol/cli.hpp"

int main(int argc, char** argv)
{
    return becpol::run_cli(argc, argv);
}
