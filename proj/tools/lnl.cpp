#include <string>
#include <vector>

#include "lnl/cli.hpp"

int main(int argc, char** argv)
{
    return lnl::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
