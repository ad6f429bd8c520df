#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace maxapprox {

struct CheckResult {
    std::string name;
    std::string expected;
    std::string got;
    bool pass = false;
};

struct VerifyOptions {
    int d_max = 0;       // 0 picks the suite default
    long samples = 0;    // 0 picks the suite default
    std::uint64_t seed = 1;
};

std::vector<std::string> suite_names();

/// Runs one named suite ("all" chains every suite). Unknown names throw
/// std::invalid_argument.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& options);

}  // namespace maxapprox
