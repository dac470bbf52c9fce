#include "dephcorr/cli.hpp"

int main(int argc, char** argv)
{
    return dephcorr::dispatch(argc, argv);
}
