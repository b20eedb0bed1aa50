#include <cstdio>
#include <exception>

#include "byzsim/verify.hpp"

// Runs the ten acceptance suites in order and prints one line per criterion.
int main() {
    const std::vector<std::string> suites = byzsim::verify_suite_names();
    int failures = 0;
    for (std::size_t i = 0; i < suites.size(); ++i) {
        bool pass = false;
        try {
            byzsim::VerifyReport rep = byzsim::verify_suite(suites[i]);
            pass = rep.pass();
            for (const auto& c : rep.checks) {
                if (!c.pass)
                    std::printf("    %-48s FAIL (measured %.9g, bound %.9g)\n",
                                c.name.c_str(), c.measured, c.bound);
            }
        } catch (const std::exception& e) {
            std::printf("    exception: %s\n", e.what());
        }
        std::printf("criterion %zu (%s): %s\n", i + 1, suites[i].c_str(),
                    pass ? "PASS" : "FAIL");
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
