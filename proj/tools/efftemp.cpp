#include <iostream>
#include <string>
#include <vector>

#include "efftemp/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return efftemp::run_cli(args, std::cout, std::cerr, efftemp::CliEnvironment::from_process());
}
