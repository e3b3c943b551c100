#include <string>
#include <vector>

#include "fiwi/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fiwi::cli_main(args);
}
