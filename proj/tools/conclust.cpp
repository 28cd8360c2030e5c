#include <iostream>
#include <vector>

#include <conclust/cli.hpp>

int main(int argc, char** argv) {
    return conclust::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout,
                             std::cerr);
}
