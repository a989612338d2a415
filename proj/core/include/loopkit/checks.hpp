#pragma once

#include <string>
#include <vector>

namespace loopkit {

// The fourteen end-to-end acceptance checks. Each one compares independent
// routes through the library and records the numbers it looked at.
struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double budget_seconds = 0;  // 0 when the check has no runtime bound
};

constexpr int kCheckCount = 14;

std::string check_name(int id);
CheckResult run_check(int id);

} // namespace loopkit
