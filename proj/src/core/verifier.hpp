#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qswap::verify {

/// Deliberate defects injectable for mutation testing of the checks
/// themselves. None in normal operation.
enum class Fault { None, ParitySign };

std::optional<Fault> fault_from_name(const std::string& name);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail; // worst deviation or discovered value
};

/// Runs every check whose name contains `filter` (empty = all).
std::vector<CheckResult> run_checks(const std::string& filter = "",
                                    Fault fault = Fault::None);

} // namespace qswap::verify
