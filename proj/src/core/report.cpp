#include "report.hpp"

#include <cstdint>
#include <sstream>

#include <json.hpp>

#include "dsl.hpp"

namespace qswap::report {

using ordered_json = nlohmann::ordered_json;

std::optional<Format> format_from_name(const std::string& name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    if (name == "text") return Format::Text;
    return std::nullopt;
}

std::string protocol_hash(const protocol::Protocol& p) {
    const std::string text = dsl::serialize(p);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::string path_string(const std::vector<engine::PathEntry>& path) {
    std::string s;
    for (const auto& e : path) {
        if (!s.empty()) s += ",";
        s += e.atom + "=" + e.level;
    }
    return s;
}

const char* kBellOrder[4] = {"phi+", "phi-", "psi+", "psi-"};

std::string render_json(const engine::RunReport& rep, const protocol::Protocol& p,
                        const RenderOptions& opts) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["engine_version"] = kEngineVersion;
    doc["protocol"]["name"] = rep.protocol_name;
    doc["protocol"]["hash"] = protocol_hash(p);
    doc["protocol"]["cutoff"] = rep.cutoff;
    doc["protocol"]["params"] = ordered_json::array();
    for (const auto& [name, value] : rep.params)
        doc["protocol"]["params"].push_back({{"name", name}, {"value", value}});
    doc["bell_pair"] = {rep.bell_pair.first, rep.bell_pair.second};

    doc["branches"] = ordered_json::array();
    for (const auto& b : rep.branches) {
        ordered_json jb;
        jb["path"] = ordered_json::array();
        for (const auto& e : b.path)
            jb["path"].push_back({{"atom", e.atom},
                                  {"level", e.level},
                                  {"probability", e.probability},
                                  {"postselected", e.postselected}});
        jb["probability"] = b.probability;
        jb["preparation_probability"] = b.preparation_probability;
        jb["detection_probability"] = b.detection_probability;
        if (!b.bell_label.empty()) {
            jb["bell_label"] = b.bell_label;
            jb["bell_fidelity"] = b.bell_fidelity;
            ordered_json jf;
            for (int k = 0; k < 4; ++k) jf[kBellOrder[k]] = b.bell_fidelities[k];
            jb["bell_fidelities"] = std::move(jf);
        }
        doc["branches"].push_back(std::move(jb));
    }

    doc["assertions"] = ordered_json::array();
    for (const auto& a : rep.assertions)
        doc["assertions"].push_back({{"description", a.description},
                                     {"expected", a.expected},
                                     {"actual", a.actual},
                                     {"tolerance", a.tolerance},
                                     {"passed", a.passed}});

    doc["totals"]["branch_count"] = rep.branches.size();
    doc["totals"]["total_probability"] = rep.total_probability;
    doc["totals"]["all_assertions_passed"] = rep.all_assertions_passed;
    if (opts.wall_time_ms) doc["wall_time_ms"] = *opts.wall_time_ms;
    return doc.dump(2) + "\n";
}

std::string render_csv(const engine::RunReport& rep) {
    std::ostringstream os;
    os << "protocol,branch,path,probability,preparation_probability,"
          "detection_probability,bell_label,bell_fidelity\n";
    for (std::size_t i = 0; i < rep.branches.size(); ++i) {
        const auto& b = rep.branches[i];
        os << rep.protocol_name << "," << i << "," << path_string(b.path) << ","
           << dsl::format_double(b.probability) << ","
           << dsl::format_double(b.preparation_probability) << ","
           << dsl::format_double(b.detection_probability) << "," << b.bell_label << ","
           << dsl::format_double(b.bell_fidelity) << "\n";
    }
    return os.str();
}

std::string render_text(const engine::RunReport& rep, const protocol::Protocol& p,
                        const RenderOptions& opts) {
    std::ostringstream os;
    os << "protocol " << rep.protocol_name << " (hash " << protocol_hash(p) << ", cutoff "
       << rep.cutoff << ")\n";
    for (const auto& [name, value] : rep.params)
        os << "  param " << name << " = " << dsl::format_double(value) << "\n";
    if (!rep.bell_pair.first.empty())
        os << "  bell pair: (" << rep.bell_pair.first << ", " << rep.bell_pair.second
           << ")\n";
    os << "branches (" << rep.branches.size() << "):\n";
    for (const auto& b : rep.branches) {
        os << "  [" << path_string(b.path) << "]  p = " << dsl::format_double(b.probability)
           << "  p|prep = " << dsl::format_double(b.detection_probability);
        if (!b.bell_label.empty())
            os << "  -> " << b.bell_label
               << "  (F = " << dsl::format_double(b.bell_fidelity) << ")";
        os << "\n";
    }
    if (!rep.assertions.empty()) {
        os << "assertions:\n";
        for (const auto& a : rep.assertions)
            os << "  [" << (a.passed ? "pass" : "FAIL") << "] " << a.description
               << "  expected " << dsl::format_double(a.expected) << "  actual "
               << dsl::format_double(a.actual) << "  tol "
               << dsl::format_double(a.tolerance) << "\n";
    }
    os << "total probability " << dsl::format_double(rep.total_probability) << "\n";
    if (opts.wall_time_ms)
        os << "wall time " << dsl::format_double(*opts.wall_time_ms) << " ms\n";
    return os.str();
}

} // namespace

std::string render(const engine::RunReport& rep, const protocol::Protocol& p,
                   const RenderOptions& opts) {
    switch (opts.format) {
    case Format::Json: return render_json(rep, p, opts);
    case Format::Csv: return render_csv(rep);
    default: return render_text(rep, p, opts);
    }
}

} // namespace qswap::report
