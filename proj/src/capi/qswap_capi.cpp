#include "qswap/qswap.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "core/dsl.hpp"
#include "core/engine.hpp"
#include "core/report.hpp"
#include "core/verifier.hpp"

using namespace qswap;

struct qswap_protocol {
    protocol::Protocol p;
};

struct qswap_report {
    protocol::Protocol p;
    engine::RunReport rep;
};

namespace {

thread_local std::string g_last_error;

qswap_status fail(qswap_status code, std::string msg) {
    g_last_error = std::move(msg);
    return code;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

qswap_status map_exception() {
    try {
        throw;
    } catch (const ZeroProbabilityBranch& e) {
        return fail(QSWAP_ERR_ZERO_BRANCH, e.what());
    } catch (const CutoffError& e) {
        return fail(QSWAP_ERR_CUTOFF, e.what());
    } catch (const ProtocolError& e) {
        return fail(QSWAP_ERR_PROTOCOL, e.what());
    } catch (const Error& e) {
        return fail(QSWAP_ERR_PROTOCOL, e.what());
    } catch (const std::exception& e) {
        return fail(QSWAP_ERR_INTERNAL, e.what());
    }
}

std::map<std::string, double> overrides_from(const double* alpha, const double* gtau) {
    std::map<std::string, double> m;
    if (alpha) m["alpha"] = *alpha;
    if (gtau) m["gtau"] = *gtau;
    return m;
}

qswap_status parse_text(const std::string& text, const std::string& name_hint,
                        const double* alpha, const double* gtau, qswap_protocol** out) {
    auto result = dsl::parse(text, overrides_from(alpha, gtau));
    if (!result.ok()) {
        std::ostringstream os;
        for (const auto& e : result.errors)
            os << e.span.line << ":" << e.span.column << ": " << e.message << "\n";
        return fail(QSWAP_ERR_PARSE, os.str());
    }
    if (result.protocol.name.empty()) result.protocol.name = name_hint;
    *out = new qswap_protocol{std::move(result.protocol)};
    return QSWAP_OK;
}

} // namespace

extern "C" {

const char* qswap_version(void) { return report::kEngineVersion; }

const char* qswap_last_error(void) { return g_last_error.c_str(); }

void qswap_string_free(char* s) { std::free(s); }

qswap_status qswap_protocol_load(const char* source, const double* alpha,
                                 const double* gtau, qswap_protocol** out) {
    if (!source || !out) return fail(QSWAP_ERR_ARGUMENT, "null argument");
    try {
        const std::string src(source);
        if (src.rfind("builtin:", 0) == 0) {
            const std::string name = src.substr(8);
            std::optional<double> gt;
            if (gtau) gt = *gtau;
            auto p = protocol::make_builtin(name, alpha ? *alpha : 2.0, gt);
            if (!p) return fail(QSWAP_ERR_ARGUMENT, "unknown built-in '" + name + "'");
            *out = new qswap_protocol{std::move(*p)};
            return QSWAP_OK;
        }
        std::ifstream in(src, std::ios::binary);
        if (!in) return fail(QSWAP_ERR_IO, "file not found: " + src);
        std::ostringstream text;
        text << in.rdbuf();
        // default protocol name: file stem
        std::string stem = src;
        if (auto slash = stem.find_last_of("/\\"); slash != std::string::npos)
            stem = stem.substr(slash + 1);
        if (auto dot = stem.rfind('.'); dot != std::string::npos) stem = stem.substr(0, dot);
        return parse_text(text.str(), stem, alpha, gtau, out);
    } catch (...) {
        return map_exception();
    }
}

qswap_status qswap_protocol_parse(const char* text, const char* name_hint,
                                  const double* alpha, const double* gtau,
                                  qswap_protocol** out) {
    if (!text || !out) return fail(QSWAP_ERR_ARGUMENT, "null argument");
    try {
        return parse_text(text, name_hint ? name_hint : "", alpha, gtau, out);
    } catch (...) {
        return map_exception();
    }
}

const char* qswap_protocol_name(const qswap_protocol* p) {
    return p ? p->p.name.c_str() : "";
}

qswap_status qswap_protocol_serialize(const qswap_protocol* p, char** out) {
    if (!p || !out) return fail(QSWAP_ERR_ARGUMENT, "null argument");
    try {
        *out = dup_string(dsl::serialize(p->p));
        return QSWAP_OK;
    } catch (...) {
        return map_exception();
    }
}

void qswap_protocol_free(qswap_protocol* p) { delete p; }

qswap_status qswap_builtin_list(char** out) {
    if (!out) return fail(QSWAP_ERR_ARGUMENT, "null argument");
    std::string joined;
    for (const auto& n : protocol::builtin_names()) joined += n + "\n";
    *out = dup_string(joined);
    return QSWAP_OK;
}

qswap_status qswap_run(const qswap_protocol* p, const int* cutoff, qswap_report** out) {
    if (!p || !out) return fail(QSWAP_ERR_ARGUMENT, "null argument");
    try {
        engine::RunOptions opts;
        if (cutoff) opts.cutoff_override = *cutoff;
        auto rep = engine::run(p->p, opts);
        *out = new qswap_report{p->p, std::move(rep)};
        return QSWAP_OK;
    } catch (...) {
        return map_exception();
    }
}

qswap_status qswap_report_render(const qswap_report* r, const char* format,
                                 const double* wall_time_ms, char** out) {
    if (!r || !format || !out) return fail(QSWAP_ERR_ARGUMENT, "null argument");
    auto fmt = report::format_from_name(format);
    if (!fmt)
        return fail(QSWAP_ERR_ARGUMENT, std::string("unknown format '") + format + "'");
    try {
        report::RenderOptions opts;
        opts.format = *fmt;
        if (wall_time_ms) opts.wall_time_ms = *wall_time_ms;
        *out = dup_string(report::render(r->rep, r->p, opts));
        return QSWAP_OK;
    } catch (...) {
        return map_exception();
    }
}

int qswap_report_all_passed(const qswap_report* r) {
    return r && r->rep.all_assertions_passed ? 1 : 0;
}

void qswap_report_free(qswap_report* r) { delete r; }

qswap_status qswap_sweep_csv(const char* builtin_name, const char* parameter,
                             double start, double stop, double step,
                             const double* alpha, const double* gtau,
                             const int* cutoff, char** out) {
    if (!builtin_name || !parameter || !out)
        return fail(QSWAP_ERR_ARGUMENT, "null argument");
    const std::string param(parameter);
    if (param != "alpha" && param != "gtau")
        return fail(QSWAP_ERR_ARGUMENT, "sweep parameter must be 'alpha' or 'gtau'");
    if (step <= 0.0) return fail(QSWAP_ERR_ARGUMENT, "sweep step must be > 0");
    if (stop < start) return fail(QSWAP_ERR_ARGUMENT, "empty sweep range");
    try {
        std::ostringstream os;
        os << "parameter,value,success_probability,conditional_fidelity\n";
        // half-step slack keeps the endpoint on the grid despite rounding
        for (double v = start; v <= stop + step * 0.5; v += step) {
            double a = param == "alpha" ? v : (alpha ? *alpha : 2.0);
            std::optional<double> gt;
            if (param == "gtau") gt = v;
            else if (gtau) gt = *gtau;
            auto p = protocol::make_builtin(builtin_name, a, gt);
            if (!p)
                return fail(QSWAP_ERR_ARGUMENT,
                            std::string("unknown built-in '") + builtin_name + "'");
            engine::RunOptions opts;
            if (cutoff) opts.cutoff_override = *cutoff;
            auto rep = engine::run(*p, opts);
            double fid = 1.0;
            bool any = false;
            for (const auto& b : rep.branches)
                if (!b.bell_label.empty()) {
                    fid = std::min(fid, b.bell_fidelity);
                    any = true;
                }
            os << param << "," << dsl::format_double(v) << ","
               << dsl::format_double(rep.total_probability) << ","
               << (any ? dsl::format_double(fid) : "") << "\n";
        }
        *out = dup_string(os.str());
        return QSWAP_OK;
    } catch (...) {
        return map_exception();
    }
}

qswap_status qswap_verify(const char* filter, const char* fault, char** table,
                          int* all_passed) {
    if (!table || !all_passed) return fail(QSWAP_ERR_ARGUMENT, "null argument");
    auto f = verify::fault_from_name(fault ? fault : "");
    if (!f) return fail(QSWAP_ERR_ARGUMENT, std::string("unknown fault '") + fault + "'");
    try {
        auto results = verify::run_checks(filter ? filter : "", *f);
        std::ostringstream os;
        bool all = true;
        for (const auto& c : results) {
            os << (c.passed ? "pass" : "FAIL") << "  " << c.name;
            for (std::size_t i = c.name.size(); i < 28; ++i) os << ' ';
            os << c.detail << "\n";
            all &= c.passed;
        }
        *table = dup_string(os.str());
        *all_passed = all ? 1 : 0;
        return QSWAP_OK;
    } catch (...) {
        return map_exception();
    }
}

} // extern "C"
