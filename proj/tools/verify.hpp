#pragma once

#include <string>
#include <vector>

namespace mcrit::cli
{

struct SuiteResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct VerifyOptions {
    // Multiplies S, S' and S'' before the residual suites see them.
    double fault_scale = 1.0;
};

std::vector<std::string> suite_names();

/// Runs one named suite, or all of them when name is empty. Throws
/// DomainError for an unknown name.
std::vector<SuiteResult> run_suites(const std::string &name, const VerifyOptions &options);

} // namespace mcrit::cli
