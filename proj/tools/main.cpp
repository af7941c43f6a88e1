#include "odaudit/cli.hpp"

int main(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return odaudit::cli::run_cli(args);
}
