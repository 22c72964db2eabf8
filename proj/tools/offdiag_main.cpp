#include <string>
#include <vector>

#include "offdiag/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return offdiag::cli_main(args);
}
