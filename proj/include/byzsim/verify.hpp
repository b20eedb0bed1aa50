#pragma once

#include <string>
#include <vector>

namespace byzsim {

struct VerifyCheck {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyCheck> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }
};

/// Suite names accepted by verify_suite, in acceptance order.
const std::vector<std::string>& verify_suite_names();

/// Runs one property suite; throws std::invalid_argument for unknown names.
VerifyReport verify_suite(const std::string& name);

}  // namespace byzsim
