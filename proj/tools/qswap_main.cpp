#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "qswap/qswap.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;   // usage, parse, IO, engine failure
constexpr int kExitFailed = 2;  // assertions or verification checks failed

void print_error() { std::fprintf(stderr, "qswap: %s", qswap_last_error()); }

bool env_cutoff(int& out) {
    const char* s = std::getenv("QSWAP_CUTOFF_OVERRIDE");
    if (!s || !*s) return false;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (*end != '\0') {
        std::fprintf(stderr, "qswap: ignoring malformed QSWAP_CUTOFF_OVERRIDE '%s'\n", s);
        return false;
    }
    out = static_cast<int>(v);
    return true;
}

struct Opt {
    std::string source;
    std::string format = "text";
    std::string parameter;
    std::string range;
    std::string filter;
    std::string fault;
    double alpha = 0.0;
    double gtau = 0.0;
    int cutoff = 0;
    int seed = 0;
    bool has_alpha = false, has_gtau = false, has_cutoff = false;
    bool timing = false;
};

int cmd_run(const Opt& o) {
    const double* alpha = o.has_alpha ? &o.alpha : nullptr;
    const double* gtau = o.has_gtau ? &o.gtau : nullptr;
    int cutoff = 0;
    const int* cutoff_p = nullptr;
    if (o.has_cutoff) {
        cutoff = o.cutoff;
        cutoff_p = &cutoff;
    } else if (env_cutoff(cutoff)) {
        cutoff_p = &cutoff;
    }

    qswap_protocol* p = nullptr;
    if (qswap_protocol_load(o.source.c_str(), alpha, gtau, &p) != QSWAP_OK) {
        print_error();
        return kExitError;
    }
    auto t0 = std::chrono::steady_clock::now();
    qswap_report* r = nullptr;
    if (qswap_run(p, cutoff_p, &r) != QSWAP_OK) {
        print_error();
        std::fprintf(stderr, "\n");
        qswap_protocol_free(p);
        return kExitError;
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    char* text = nullptr;
    if (qswap_report_render(r, o.format.c_str(), o.timing ? &ms : nullptr, &text) !=
        QSWAP_OK) {
        print_error();
        std::fprintf(stderr, "\n");
        qswap_report_free(r);
        qswap_protocol_free(p);
        return kExitError;
    }
    std::fputs(text, stdout);
    int ok = qswap_report_all_passed(r);
    qswap_string_free(text);
    qswap_report_free(r);
    qswap_protocol_free(p);
    return ok ? kExitOk : kExitFailed;
}

int cmd_sweep(const Opt& o) {
    double start = 0, stop = 0, step = 0;
    if (std::sscanf(o.range.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3) {
        std::fprintf(stderr, "qswap: range must be start:stop:step\n");
        return kExitError;
    }
    std::string name = o.source;
    if (name.rfind("builtin:", 0) == 0) name = name.substr(8);
    const double* alpha = o.has_alpha ? &o.alpha : nullptr;
    const double* gtau = o.has_gtau ? &o.gtau : nullptr;
    int cutoff = 0;
    const int* cutoff_p = nullptr;
    if (o.has_cutoff) {
        cutoff = o.cutoff;
        cutoff_p = &cutoff;
    } else if (env_cutoff(cutoff)) {
        cutoff_p = &cutoff;
    }
    char* csv = nullptr;
    if (qswap_sweep_csv(name.c_str(), o.parameter.c_str(), start, stop, step, alpha,
                        gtau, cutoff_p, &csv) != QSWAP_OK) {
        print_error();
        std::fprintf(stderr, "\n");
        return kExitError;
    }
    std::fputs(csv, stdout);
    qswap_string_free(csv);
    return kExitOk;
}

int cmd_verify(const Opt& o) {
    char* table = nullptr;
    int all = 0;
    if (qswap_verify(o.filter.c_str(), o.fault.c_str(), &table, &all) != QSWAP_OK) {
        print_error();
        std::fprintf(stderr, "\n");
        return kExitError;
    }
    std::fputs(table, stdout);
    qswap_string_free(table);
    return all ? kExitOk : kExitFailed;
}

int cmd_list() {
    char* names = nullptr;
    if (qswap_builtin_list(&names) != QSWAP_OK) {
        print_error();
        return kExitError;
    }
    std::fputs(names, stdout);
    qswap_string_free(names);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cavity-QED Bell-state preparation and entanglement-swapping simulator"};
    app.require_subcommand(1);
    Opt o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--alpha", o.alpha, "coherent amplitude override")
            ->each([&](const std::string&) { o.has_alpha = true; });
        sub->add_option("--gtau", o.gtau, "resonant Rabi angle override")
            ->each([&](const std::string&) { o.has_gtau = true; });
        sub->add_option("--cutoff", o.cutoff, "Fock-space cutoff override")
            ->each([&](const std::string&) { o.has_cutoff = true; });
        sub->add_option("--seed", o.seed,
                        "reserved; the engine is deterministic and ignores it");
    };

    CLI::App* run = app.add_subcommand("run", "simulate a protocol and report branches");
    run->add_option("source", o.source, ".qsp file or builtin:NAME")->required();
    run->add_option("--format", o.format, "json|csv|text")->default_str("text");
    run->add_flag("--timing", o.timing, "include wall time in the report");
    add_common(run);

    CLI::App* sweep = app.add_subcommand("sweep", "run a built-in over a parameter grid");
    sweep->add_option("builtin", o.source, "built-in protocol name")->required();
    sweep->add_option("parameter", o.parameter, "alpha|gtau")->required();
    sweep->add_option("range", o.range, "start:stop:step")->required();
    add_common(sweep);

    CLI::App* verify = app.add_subcommand("verify", "run oracle and invariant checks");
    verify->add_option("--filter", o.filter, "run only checks whose name contains this");
    verify->add_option("--inject-fault", o.fault, "mutation-testing fault name")
        ->group(""); // hidden: test fixture only

    app.add_subcommand("list", "list built-in protocols");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    if (run->parsed()) return cmd_run(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (verify->parsed()) return cmd_verify(o);
    return cmd_list();
}
