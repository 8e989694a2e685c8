#ifndef HIERNET_H
#define HIERNET_H

#include <stddef.h>
#include <stdint.h>

#if defined(HIERNET_BUILDING_LIBRARY)
#define HN_API __attribute__((visibility("default")))
#else
#define HN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hn_status {
  HN_OK = 0,
  HN_ERR_INVALID_ARGUMENT = 1,
  HN_ERR_DISCONNECTED = 2,
  HN_ERR_OUT_OF_RANGE = 3,
  HN_ERR_NUMERIC = 4,
  HN_ERR_PARSE = 5,
  HN_ERR_IO = 6,
  HN_ERR_NULL_POINTER = 7,
  HN_ERR_INTERNAL = 8
} hn_status;

typedef struct hn_graph hn_graph;
typedef struct hn_spec hn_spec;
typedef struct hn_circuit hn_circuit;

/* Message of the last failed call on this thread, "" if none. */
HN_API const char* hn_last_error(void);
HN_API const char* hn_version(void);
HN_API const char* hn_status_name(hn_status status);

/* Frees strings and arrays handed out by the library. */
HN_API void hn_free(void* ptr);

/* ---- graphs ------------------------------------------------------------ */

HN_API hn_status hn_graph_build(size_t order, const size_t* us, const size_t* vs, const double* ws,
                                size_t edge_count, size_t root, hn_graph** out);
/* kind: complete, cycle, path, star, porcupine (a = n) or grid (a = dims, b = side). */
HN_API hn_status hn_graph_standard(const char* kind, size_t a, size_t b, hn_graph** out);
/* Graph JSON, or spec JSON which is built. */
HN_API hn_status hn_graph_from_json(const char* json, hn_graph** out);
HN_API hn_status hn_graph_to_json(const hn_graph* g, char** out);
HN_API hn_status hn_graph_to_dot(const hn_graph* g, char** out);
HN_API void hn_graph_free(hn_graph* g);

HN_API size_t hn_graph_order(const hn_graph* g);
HN_API size_t hn_graph_edge_count(const hn_graph* g);
HN_API size_t hn_graph_root(const hn_graph* g);
HN_API hn_status hn_graph_edge(const hn_graph* g, size_t index, size_t* u, size_t* v, double* w);

typedef struct hn_invariants {
  size_t order;
  size_t edge_count;
  size_t diameter;
  double weighted_diameter;
  size_t root_eccentricity;
  double weighted_root_eccentricity;
  double mean_distance;
  double mean_distance_distinct;
  size_t max_degree;
  double max_valency;
  double total_edge_weight;
} hn_invariants;

HN_API hn_status hn_graph_invariants(const hn_graph* g, hn_invariants* out);

/* exact != 0 enumerates every cut (order <= 30). *cut is freed with hn_free. */
HN_API hn_status hn_graph_cheeger(const hn_graph* g, int exact, double* value, size_t** cut, size_t* cut_len);

/* Dense Laplacian spectrum, sorted. */
HN_API hn_status hn_graph_spectrum(const hn_graph* g, double** values, size_t* count);

typedef struct hn_bounds {
  double lambda2;
  double max_valency;
  double diameter_lo;
  double diameter_hi;
  double mean_dist_lo;
  double mean_dist_hi;
  double cheeger_lo;
  double cheeger_hi;
} hn_bounds;

HN_API hn_status hn_graph_spectral_bounds(const hn_graph* g, hn_bounds* out);
HN_API hn_status hn_spectral_bounds_from(size_t order, double lambda2, double max_valency, hn_bounds* out);

/* ---- hierarchy specs ---------------------------------------------------- */

HN_API hn_status hn_spec_create(const hn_graph* const* bases, size_t levels, const double* alphas, int truncated,
                                hn_spec** out);
HN_API hn_status hn_spec_from_json(const char* json, hn_spec** out);
HN_API hn_status hn_spec_to_json(const hn_spec* spec, char** out);
HN_API void hn_spec_free(hn_spec* spec);

HN_API size_t hn_spec_levels(const hn_spec* spec);
HN_API size_t hn_spec_order(const hn_spec* spec);
HN_API int hn_spec_truncated(const hn_spec* spec);
HN_API hn_status hn_spec_build(const hn_spec* spec, hn_graph** out);

/* companion != 0 selects polynomial roots instead of the symmetric block solve. */
HN_API hn_status hn_spec_recursive_spectrum(const hn_spec* spec, int companion, unsigned jobs, double** values,
                                            size_t* count);

/* Address digits, bottom level first. digits must hold hn_spec_levels entries. */
HN_API hn_status hn_spec_address(const hn_spec* spec, size_t index, size_t* digits);
HN_API hn_status hn_spec_index(const hn_spec* spec, const size_t* digits, size_t* index);

/* ---- closed forms ------------------------------------------------------- */

typedef struct hn_formulas {
  size_t diameter;
  size_t root_eccentricity;
  double weighted_diameter;
  double weighted_root_eccentricity;
  size_t max_degree;
  double total_edge_weight;
  /* -1 when alphas are not geometric, else 0..4 for
     alpha<1, alpha=1, 1<alpha<n, alpha=n, alpha>n */
  int regime;
} hn_formulas;

/* Needs every base equal. */
HN_API hn_status hn_spec_formulas(const hn_spec* spec, hn_formulas* out);
HN_API const char* hn_regime_name(int regime);
HN_API hn_status hn_kn_weighted_diameter(size_t n, size_t k, double alpha, double* out);
HN_API hn_status hn_kn_total_weight(size_t n, size_t k, double alpha, double* out);
HN_API hn_status hn_truncated_node_count(size_t n, size_t k, uint64_t* out);
/* treewidth <= 0 skips the capacity; capacity is then NaN. */
HN_API hn_status hn_degree_diameter(double max_degree, double diameter, double treewidth, double* moore_bound,
                                    double* capacity);

/* ---- GHZ spreading ------------------------------------------------------ */

HN_API hn_status hn_ghz_probability_graph(const hn_spec* spec, double p0, double alpha, hn_graph** out);
HN_API hn_status hn_ghz_uniform_probability(const hn_graph* g, double p0, hn_graph** out);
/* Node of minimum eccentricity under weights 1/p. */
HN_API hn_status hn_ghz_center(const hn_graph* p, size_t* out);
HN_API hn_status hn_ghz_deterministic_time(const hn_graph* g, size_t start, double* out);
HN_API hn_status hn_ghz_simulate(const hn_graph* p, size_t start, uint64_t seed, uint64_t* steps);

typedef struct hn_trial_stats {
  size_t trials;
  size_t start;
  double mean;
  double std;
  uint64_t min;
  uint64_t max;
  uint64_t seed;
  double prediction;
  double bound_lo;
  double bound_hi;
} hn_trial_stats;

HN_API hn_status hn_ghz_trials(const hn_graph* p, size_t start, size_t trials, uint64_t seed, double p0,
                               unsigned jobs, hn_trial_stats* out);

/* ---- circuits and placement --------------------------------------------- */

HN_API hn_status hn_circuit_from_gates(const size_t* us, const size_t* vs, size_t gate_count, size_t qubits,
                                       hn_circuit** out);
/* "u v" per line, '#' comments. */
HN_API hn_status hn_circuit_parse(const char* text, size_t qubits, hn_circuit** out);
HN_API hn_status hn_circuit_random(size_t qubits, size_t gates, uint64_t seed, hn_circuit** out);
HN_API void hn_circuit_free(hn_circuit* c);
HN_API size_t hn_circuit_qubits(const hn_circuit* c);
HN_API size_t hn_circuit_gate_count(const hn_circuit* c);

typedef struct hn_placement {
  size_t* mapping; /* qubit -> machine node; free with hn_free */
  size_t qubits;
  uint64_t cost;
  uint64_t naive_cost;
  int used_naive;
} hn_placement;

HN_API hn_status hn_place(const hn_circuit* c, const hn_spec* machine, uint64_t seed, hn_placement* out);
HN_API hn_status hn_placement_cost(const hn_circuit* c, const hn_graph* machine, const size_t* mapping,
                                   size_t qubits, uint64_t* out);

/* ---- Pareto ------------------------------------------------------------- */

typedef struct hn_metrics {
  size_t order;
  double weighted_diameter;
  size_t max_degree;
  double total_edge_weight;
} hn_metrics;

HN_API hn_status hn_graph_metrics(const hn_graph* g, hn_metrics* out);
/* survives[i] = 1 when record i is not dominated. */
HN_API hn_status hn_pareto_front(const hn_metrics* records, size_t count, int* survives);

/* ---- misc --------------------------------------------------------------- */

/* 16 hex digit FNV-1a of text. */
HN_API hn_status hn_hash(const char* text, char** out);
HN_API hn_status hn_read_file(const char* path, char** out);
HN_API hn_status hn_write_file(const char* path, const char* text);

#ifdef __cplusplus
}
#endif

#endif
