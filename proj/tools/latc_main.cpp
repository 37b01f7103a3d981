#include <vector>

#include "latc/cli.hpp"

int main(int argc, char** argv) {
    return latc::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
