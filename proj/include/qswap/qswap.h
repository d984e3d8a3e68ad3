#ifndef QSWAP_H
#define QSWAP_H

/* C interface to the cavity-QED entanglement-swapping simulator.
 *
 * All functions returning qswap_status set a thread-local error message
 * retrievable with qswap_last_error() on failure. Output handles are only
 * written on QSWAP_OK and must be released with the matching _free call.
 * Strings returned through char** are heap-allocated; release them with
 * qswap_string_free().
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct qswap_protocol qswap_protocol;
typedef struct qswap_report qswap_report;

typedef enum {
    QSWAP_OK = 0,
    QSWAP_ERR_PARSE = 1,       /* .qsp syntax or semantic errors */
    QSWAP_ERR_IO = 2,          /* unreadable file */
    QSWAP_ERR_PROTOCOL = 3,    /* ill-formed step sequence at run time */
    QSWAP_ERR_CUTOFF = 4,      /* truncation bound violated */
    QSWAP_ERR_ZERO_BRANCH = 5, /* post-selection on an impossible outcome */
    QSWAP_ERR_ARGUMENT = 6,    /* bad argument (unknown name, format, ...) */
    QSWAP_ERR_INTERNAL = 7
} qswap_status;

/* Library version, "major.minor.patch". */
const char* qswap_version(void);

/* Message for the most recent failure on this thread ("" if none). */
const char* qswap_last_error(void);

void qswap_string_free(char* s);

/* ---- protocols ------------------------------------------------------- */

/* Loads "builtin:NAME" or a .qsp file path. alpha/gtau, when non-NULL,
 * override the protocol's parameters of the same name (for built-ins they
 * configure the generator). */
qswap_status qswap_protocol_load(const char* source, const double* alpha,
                                 const double* gtau, qswap_protocol** out);

/* Parses .qsp text directly; name_hint is used when the text itself does
 * not carry a protocol name (may be NULL). */
qswap_status qswap_protocol_parse(const char* text, const char* name_hint,
                                  const double* alpha, const double* gtau,
                                  qswap_protocol** out);

const char* qswap_protocol_name(const qswap_protocol* p);

/* Canonical .qsp serialization. */
qswap_status qswap_protocol_serialize(const qswap_protocol* p, char** out);

void qswap_protocol_free(qswap_protocol* p);

/* Newline-separated list of built-in protocol names. */
qswap_status qswap_builtin_list(char** out);

/* ---- simulation ------------------------------------------------------ */

/* cutoff: optional Fock-space cutoff override (NULL = automatic). */
qswap_status qswap_run(const qswap_protocol* p, const int* cutoff,
                       qswap_report** out);

/* format: "json" | "csv" | "text". wall_time_ms, when non-NULL, is echoed
 * into the document; leave NULL for byte-identical reports. */
qswap_status qswap_report_render(const qswap_report* r, const char* format,
                                 const double* wall_time_ms, char** out);

/* 1 when every assertion in the protocol passed, else 0. */
int qswap_report_all_passed(const qswap_report* r);

void qswap_report_free(qswap_report* r);

/* ---- sweeps and verification ---------------------------------------- */

/* Runs a built-in over a parameter grid. parameter: "alpha" | "gtau";
 * grid start..stop inclusive with the given step (> 0). alpha/gtau fix the
 * non-swept parameter. Emits CSV with a header row. */
qswap_status qswap_sweep_csv(const char* builtin_name, const char* parameter,
                             double start, double stop, double step,
                             const double* alpha, const double* gtau,
                             const int* cutoff, char** out);

/* Runs the oracle-equivalence and invariant checks whose names contain
 * `filter` (NULL or "" = all). `fault` injects a deliberate defect for
 * mutation testing (NULL or "none" = none; "parity-sign"). Writes a
 * pass/fail table and sets *all_passed. */
qswap_status qswap_verify(const char* filter, const char* fault, char** table,
                          int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* QSWAP_H */
