#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
    return entlab::cli::dispatch(std::vector<std::string>(argv + 1, argv + argc));
}
