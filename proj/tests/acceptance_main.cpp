// Acceptance suite: one pass/fail line per criterion; nonzero exit on any
// hard-identity failure.

#include <cstring>
#include <iostream>

#include "weylab/acceptance.hpp"

int main(int argc, char** argv) {
    weylab::AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--fast") == 0) opt.fast_only = true;
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
            opt.seed = std::strtoull(argv[++i], nullptr, 10);
    }
    auto results = weylab::run_acceptance(opt, std::cout);
    int failures = 0, hard_failures = 0;
    for (const auto& r : results) {
        if (!r.pass) {
            ++failures;
            if (r.hard) ++hard_failures;
        }
    }
    std::cout << results.size() - static_cast<size_t>(failures) << "/" << results.size()
              << " criteria passed\n";
    if (hard_failures) return 2;
    return failures ? 1 : 0;
}
