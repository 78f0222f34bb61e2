#ifndef MINPART_H
#define MINPART_H

/*
 * C interface to the spectral minimal-partition library.
 *
 * Every operation returns an mp_status; MP_OK means success and anything
 * else leaves a thread-local message readable through mp_last_error().
 * Handles are opaque and owned by the caller via the matching _free
 * function. Strings returned through char** parameters are heap copies
 * released with mp_string_free(); they are never NULL on MP_OK.
 *
 * Error-code intent for callers that map to process exit codes:
 * MP_ERR_INVALID, MP_ERR_PARSE and MP_ERR_IO mean the input or the
 * environment is unusable (usage errors); MP_ERR_STRUCTURAL and
 * MP_ERR_NUMERICAL mean a computation failed on valid input.
 */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MINPART_API
#else
#define MINPART_API __attribute__((visibility("default")))
#endif

typedef enum mp_status {
    MP_OK = 0,
    MP_ERR_INVALID = 1,    /* argument or configuration value out of range */
    MP_ERR_PARSE = 2,      /* malformed config text or value string */
    MP_ERR_STRUCTURAL = 3, /* domain or partition violates a structural precondition */
    MP_ERR_NUMERICAL = 4,  /* solver failed to converge */
    MP_ERR_IO = 5,         /* filesystem failure; message carries the path */
    MP_ERR_INTERNAL = 6    /* unexpected failure inside the library */
} mp_status;

/* Semantic version of the library. Static storage; do not free. */
MINPART_API const char* mp_version(void);

/* Message for this thread's most recent failure; "" after a success.
 * Storage is owned by the library and stays valid until the next call. */
MINPART_API const char* mp_last_error(void);

/* Releases a string obtained through any char** output parameter. */
MINPART_API void mp_string_free(char* s);

/*
 * Problem description: a domain plus grid sizes and run parameters,
 * assembled from "key = value" config text ('#' starts a comment) and
 * individual overrides. Recognized keys:
 *
 *   domain  kind (strip | annulus), b (rational or decimal), degree (1 | 2),
 *           bc_bottom, bc_top (neumann | dirichlet),
 *           h1, h2 (annulus boundary Fourier coefficients "a0 a1 b1 ...")
 *   grid    ntheta, nt
 *   run     k, count, index, init (equal_sectors | equal_bands |
 *           random_voronoi), restarts, seed, tol, max_sweeps, patience
 *
 * b is required by every compute call; grid operations additionally need
 * ntheta and nt. Later loads and sets override earlier values.
 */
typedef struct mp_problem mp_problem;

MINPART_API mp_status mp_problem_new(mp_problem** out);
MINPART_API void mp_problem_free(mp_problem* p);
MINPART_API mp_status mp_problem_load_text(mp_problem* p, const char* config_text);
MINPART_API mp_status mp_problem_load_file(mp_problem* p, const char* path);
MINPART_API mp_status mp_problem_set(mp_problem* p, const char* key, const char* value);
MINPART_API mp_status mp_problem_describe(const mp_problem* p, char** out);

/*
 * Artifact sink: collects the files one command run writes under a fixed
 * root directory and finishes with root/manifest.txt listing every
 * artifact with its fnv1a64 checksum. Relative paths only.
 */
typedef struct mp_sink mp_sink;

MINPART_API mp_status mp_sink_new(const char* root_dir, mp_sink** out);
MINPART_API void mp_sink_free(mp_sink* s);
MINPART_API mp_status mp_sink_write_text(mp_sink* s, const char* relpath, const char* content);
MINPART_API mp_status mp_sink_write_manifest(mp_sink* s);

/*
 * Exact low spectrum of the cylinder strip (analytic catalog; strips only).
 * Uses keys b, degree, bc_bottom, bc_top, count.
 */
typedef struct mp_spectrum mp_spectrum;

MINPART_API mp_status mp_spectrum_compute(const mp_problem* p, mp_spectrum** out);
MINPART_API void mp_spectrum_free(mp_spectrum* s);
MINPART_API int mp_spectrum_entry_count(const mp_spectrum* s);
MINPART_API mp_status mp_spectrum_csv(const mp_spectrum* s, char** out);
MINPART_API mp_status mp_spectrum_describe(const mp_spectrum* s, char** out);

/*
 * Finite-difference eigensolve of the configured domain: the lowest `count`
 * eigenvalues of the Neumann/Dirichlet Laplacian on the ntheta x nt grid.
 */
typedef struct mp_eigs mp_eigs;

MINPART_API mp_status mp_eigs_solve(const mp_problem* p, mp_eigs** out);
MINPART_API void mp_eigs_free(mp_eigs* e);
MINPART_API int mp_eigs_count(const mp_eigs* e);
/* i is 0-based; values are ordered ascending. */
MINPART_API mp_status mp_eigs_value(const mp_eigs* e, int i, double* out);
MINPART_API mp_status mp_eigs_values_csv(const mp_eigs* e, char** out);
MINPART_API mp_status mp_eigs_vector_csv(const mp_eigs* e, int i, char** out);
MINPART_API mp_status mp_eigs_describe(const mp_eigs* e, char** out);

/*
 * Nodal analysis of eigenfunction number `index` (1-based, counted with
 * multiplicity): nodal domains, their adjacency graph, and a Courant
 * sharpness probe of the eigenvalue's cluster.
 */
typedef struct mp_nodal mp_nodal;

MINPART_API mp_status mp_nodal_analyze(const mp_problem* p, mp_nodal** out);
MINPART_API void mp_nodal_free(mp_nodal* n);
MINPART_API int mp_nodal_domain_count(const mp_nodal* n);
MINPART_API int mp_nodal_witness_found(const mp_nodal* n);
MINPART_API mp_status mp_nodal_mode_csv(const mp_nodal* n, char** out);
MINPART_API mp_status mp_nodal_labels_csv(const mp_nodal* n, char** out);
MINPART_API mp_status mp_nodal_labels_pgm(const mp_nodal* n, char** out);
MINPART_API mp_status mp_nodal_graph_text(const mp_nodal* n, char** out);
MINPART_API mp_status mp_nodal_describe(const mp_nodal* n, char** out);

/*
 * Partition optimizer: minimizes the largest part ground energy over
 * k-partitions of the grid. Uses keys k, init, restarts, seed, tol,
 * max_sweeps, patience.
 */
typedef struct mp_partition mp_partition;

MINPART_API mp_status mp_partition_run(const mp_problem* p, mp_partition** out);
MINPART_API void mp_partition_free(mp_partition* q);
MINPART_API mp_status mp_partition_lambda(const mp_partition* q, double* out);
MINPART_API mp_status mp_partition_labels_csv(const mp_partition* q, char** out);
MINPART_API mp_status mp_partition_labels_pgm(const mp_partition* q, char** out);
MINPART_API mp_status mp_partition_history_csv(const mp_partition* q, char** out);
MINPART_API mp_status mp_partition_describe(const mp_partition* q, char** out);

/*
 * Named verification scenarios. The registry is static; ids are stable.
 * mp_scenario_run accepts an optional problem whose ntheta, nt, restarts,
 * seed and tol keys (only those explicitly set) override the scenario
 * defaults, and an optional sink that receives the scenario's artifacts.
 * The run itself succeeds (MP_OK) even when claims fail; inspect
 * mp_report_pass for the verdict.
 */
typedef struct mp_report mp_report;

MINPART_API int mp_scenario_count(void);
/* i is 0-based registry order. */
MINPART_API mp_status mp_scenario_id(int i, char** out);
MINPART_API mp_status mp_scenario_list(char** out);
MINPART_API mp_status mp_scenario_run(const char* id, const mp_problem* overrides,
                                      mp_sink* sink, mp_report** out);
MINPART_API void mp_report_free(mp_report* r);
MINPART_API int mp_report_pass(const mp_report* r);
MINPART_API mp_status mp_report_text(const mp_report* r, char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MINPART_H */
