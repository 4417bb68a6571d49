// Acceptance suite: one pass/fail line per check, grouped by criterion.
#include <cstring>
#include <iostream>

#include "aps/verify.hpp"

int main(int argc, char** argv) {
    std::vector<int> criteria;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            criteria.push_back(std::atoi(argv[++i]));
        }
    }
    if (criteria.empty())
        for (int k = 1; k <= 10; ++k) criteria.push_back(k);

    int fails = 0;
    for (int k : criteria) {
        auto result = aps::run_criterion(k);
        fails += aps::print_suite(result, std::cout);
        std::cout << (result.pass() ? "[PASS] " : "[FAIL] ") << "criterion " << k << " ("
                  << result.suite << ")\n";
    }
    return fails == 0 ? 0 : 1;
}
