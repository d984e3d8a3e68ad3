#pragma once

#include <map>
#include <string>
#include <vector>

#include "protocol_types.hpp"

namespace qswap::dsl {

struct SourceSpan {
    int line = 1;   // 1-based
    int column = 1; // 1-based
    int length = 1;
    bool operator==(const SourceSpan&) const = default;
};

struct ParseError {
    SourceSpan span;
    std::string message;
    std::vector<std::string> expected; // acceptable tokens at this point, may be empty
};

struct ParseResult {
    protocol::Protocol protocol;
    std::vector<ParseError> errors;
    bool ok() const { return errors.empty(); }
};

/// Parses .qsp text. Collects every error instead of stopping at the first;
/// the returned protocol is only meaningful when ok(). `overrides` replaces
/// the values of matching `param` declarations (CLI flags).
ParseResult parse(const std::string& text,
                  const std::map<std::string, double>& overrides = {});

/// Canonical text form; parse(serialize(p)) is structurally equal to p.
std::string serialize(const protocol::Protocol& p);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

} // namespace qswap::dsl
