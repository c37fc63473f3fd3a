#include "nsd/workbench.hpp"

int main(int argc, char** argv)
{
    return nsd::run_cli(argc, argv);
}
