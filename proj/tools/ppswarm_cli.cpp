#include "ppswarm/cli.hpp"

int main(int argc, char** argv)
{
    return ppswarm::cli_main(argc, argv);
}
