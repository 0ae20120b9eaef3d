// Runs the acceptance criteria and prints one line per criterion.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "verification/criteria.hpp"

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    int failed = 0;
    for (int id = 1; id <= verification::kCriteria; ++id) {
        if (only && id != only) continue;
        try {
            const auto c = verification::run_criterion(id);
            std::string timing = std::to_string(c.seconds).substr(0, 6) + "s";
            if (c.limit_seconds > 0.0) timing += " (limit " + std::to_string(static_cast<int>(c.limit_seconds)) + "s)";
            std::printf("criterion %d %-28s %s  %s  [%s]\n", id, c.name.c_str(), c.passed ? "PASS" : "FAIL",
                        c.summary.c_str(), timing.c_str());
            if (!c.passed) ++failed;
        } catch (const std::exception& e) {
            std::printf("criterion %d %-28s FAIL  error: %s\n", id, "", e.what());
            ++failed;
        }
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
