// Acceptance suite runner: executes every acceptance criterion at full desk
// scale and prints one pass/fail line per criterion. Exit code 0 only when
// all criteria pass. Pass --fast for the reduced-sample variant.
#include <cstring>
#include <iostream>
#include <string>

#include "selftest.hpp"

int main(int argc, char** argv) {
    entlab::selftest::Options opts;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--fast") == 0) {
            opts.fast = true;
        } else if (std::strcmp(argv[i], "--scratch") == 0 && i + 1 < argc) {
            opts.scratch_dir = argv[++i];
        } else {
            std::cerr << "usage: acceptance_tests [--fast] [--scratch <dir>]\n";
            return 2;
        }
    }
    const entlab::selftest::Report report = entlab::selftest::run(opts, std::cout);
    return report.all_passed() ? 0 : 1;
}
