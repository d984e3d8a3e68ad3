#pragma once

#include <stdexcept>
#include <string>

namespace qswap {

/// Base class for all engine errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Dimension or index mismatch between operands.
struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/// Post-selection on an outcome whose Born probability is below threshold.
struct ZeroProbabilityBranch : Error {
    explicit ZeroProbabilityBranch(const std::string& msg) : Error(msg) {}
};

/// Fock cutoff too small for the requested field amplitude.
struct CutoffError : Error {
    explicit CutoffError(const std::string& msg) : Error(msg) {}
};

/// Ill-formed protocol (undeclared atom, missing field, bad step order).
struct ProtocolError : Error {
    explicit ProtocolError(const std::string& msg) : Error(msg) {}
};

} // namespace qswap
