#include <vector>

#include "ttr/cli.hpp"

int main(int argc, char** argv) {
    return ttr::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
