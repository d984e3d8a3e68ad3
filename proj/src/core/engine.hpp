#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "protocol_types.hpp"

namespace qswap::engine {

struct RunOptions {
    std::optional<int> cutoff_override;
};

/// One measurement or post-selection event along a branch.
struct PathEntry {
    std::string atom;
    std::string level;
    double probability = 0.0;
    bool postselected = false;
    bool operator==(const PathEntry&) const = default;
};

struct BranchRecord {
    std::vector<PathEntry> path;
    /// Product of every path-entry probability.
    double probability = 1.0;
    /// Product over post-selected entries only.
    double preparation_probability = 1.0;
    /// probability / preparation_probability.
    double detection_probability = 1.0;
    /// Closest Bell state on the report pair ("phi+" ... | "" when the pair
    /// does not exist or is not a Bell-capable species).
    std::string bell_label;
    double bell_fidelity = 0.0;
    /// Fidelities in the order phi+, phi-, psi+, psi-.
    std::array<double, 4> bell_fidelities{};
    StateVector state;
};

struct AssertionRecord {
    std::string description;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct RunReport {
    std::string protocol_name;
    int cutoff = 0;
    std::vector<std::pair<std::string, double>> params;
    /// Atom pair used for Bell labeling in branch records.
    std::pair<std::string, std::string> bell_pair;
    std::vector<BranchRecord> branches;
    std::vector<AssertionRecord> assertions;
    bool all_assertions_passed = true;
    /// Sum of branch probabilities (the overall survival probability of the
    /// post-selections; 1 when the protocol only measures).
    double total_probability = 0.0;
};

/// Fock cutoff chosen from the largest coherent amplitude the field can
/// reach over the protocol (preparations set the bound, injections add).
int auto_cutoff(const protocol::Protocol& p);

RunReport run(const protocol::Protocol& p, const RunOptions& opts = {});

} // namespace qswap::engine
