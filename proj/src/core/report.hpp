#pragma once

#include <optional>
#include <string>

#include "engine.hpp"

namespace qswap::report {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kEngineVersion = "1.0.0";

enum class Format { Json, Csv, Text };

std::optional<Format> format_from_name(const std::string& name);

/// FNV-1a 64-bit over the canonical serialization, as 16 hex digits.
std::string protocol_hash(const protocol::Protocol& p);

struct RenderOptions {
    Format format = Format::Json;
    /// When set, emitted as wall_time_ms; kept out of the document by
    /// default so identical runs stay byte-identical.
    std::optional<double> wall_time_ms;
};

std::string render(const engine::RunReport& rep, const protocol::Protocol& p,
                   const RenderOptions& opts);

} // namespace qswap::report
