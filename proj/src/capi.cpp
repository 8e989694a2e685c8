#include "hiernet/hiernet.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "hiernet/closed_forms.hpp"
#include "hiernet/error.hpp"
#include "hiernet/ghz.hpp"
#include "hiernet/io.hpp"
#include "hiernet/pareto.hpp"
#include "hiernet/placement.hpp"
#include "hiernet/products.hpp"
#include "hiernet/spectral.hpp"

struct hn_graph {
  hiernet::Graph g;
};

struct hn_spec {
  hiernet::HierarchySpec s;
};

struct hn_circuit {
  hiernet::Graph g;
  std::size_t gates = 0;
};

namespace {

thread_local std::string last_error;

hn_status status_of(hiernet::ErrorCode c) {
  switch (c) {
    case hiernet::ErrorCode::kInvalidArgument: return HN_ERR_INVALID_ARGUMENT;
    case hiernet::ErrorCode::kDisconnected: return HN_ERR_DISCONNECTED;
    case hiernet::ErrorCode::kOutOfRange: return HN_ERR_OUT_OF_RANGE;
    case hiernet::ErrorCode::kNumeric: return HN_ERR_NUMERIC;
    case hiernet::ErrorCode::kParse: return HN_ERR_PARSE;
    case hiernet::ErrorCode::kIo: return HN_ERR_IO;
  }
  return HN_ERR_INTERNAL;
}

template <class F>
hn_status guard(F&& f) noexcept {
  try {
    f();
    last_error.clear();
    return HN_OK;
  } catch (const hiernet::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HN_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return HN_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw hiernet::Error(hiernet::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

#define HN_NEED(p)                                          \
  do {                                                      \
    if (!(p)) {                                             \
      last_error = std::string(#p) + " is null";            \
      return HN_ERR_NULL_POINTER;                           \
    }                                                       \
  } while (0)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class T, class Container>
T* dup_array(const Container& v) {
  T* out = static_cast<T*>(std::malloc(std::max<std::size_t>(1, v.size()) * sizeof(T)));
  if (!out) throw std::bad_alloc();
  std::size_t i = 0;
  for (const auto& x : v) out[i++] = static_cast<T>(x);
  return out;
}

hn_bounds bounds_of(const hiernet::SpectralBounds& b) {
  return {b.lambda2, b.max_valency, b.diameter_lo, b.diameter_hi, b.mean_dist_lo, b.mean_dist_hi, b.cheeger_lo,
          b.cheeger_hi};
}

}  // namespace

extern "C" {

const char* hn_last_error(void) { return last_error.c_str(); }

const char* hn_version(void) { return HIERNET_VERSION; }

const char* hn_status_name(hn_status status) {
  switch (status) {
    case HN_OK: return "ok";
    case HN_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HN_ERR_DISCONNECTED: return "disconnected graph";
    case HN_ERR_OUT_OF_RANGE: return "out of range";
    case HN_ERR_NUMERIC: return "numerical failure";
    case HN_ERR_PARSE: return "parse error";
    case HN_ERR_IO: return "i/o error";
    case HN_ERR_NULL_POINTER: return "null pointer";
    case HN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void hn_free(void* ptr) { std::free(ptr); }

// ---- graphs ----------------------------------------------------------------

hn_status hn_graph_build(size_t order, const size_t* us, const size_t* vs, const double* ws, size_t edge_count,
                         size_t root, hn_graph** out) {
  HN_NEED(out);
  if (edge_count > 0) {
    HN_NEED(us);
    HN_NEED(vs);
  }
  return guard([&] {
    std::vector<hiernet::Edge> edges(edge_count);
    for (std::size_t i = 0; i < edge_count; ++i) edges[i] = {us[i], vs[i], ws ? ws[i] : 1.0};
    *out = new hn_graph{hiernet::Graph::build(order, std::move(edges), root)};
  });
}

hn_status hn_graph_standard(const char* kind, size_t a, size_t b, hn_graph** out) {
  HN_NEED(kind);
  HN_NEED(out);
  return guard([&] { *out = new hn_graph{hiernet::standard_graph(kind, a, b)}; });
}

hn_status hn_graph_from_json(const char* json, hn_graph** out) {
  HN_NEED(json);
  HN_NEED(out);
  return guard([&] { *out = new hn_graph{hiernet::load_graph_json(json)}; });
}

hn_status hn_graph_to_json(const hn_graph* g, char** out) {
  HN_NEED(g);
  HN_NEED(out);
  return guard([&] { *out = dup_string(hiernet::graph_to_json(g->g)); });
}

hn_status hn_graph_to_dot(const hn_graph* g, char** out) {
  HN_NEED(g);
  HN_NEED(out);
  return guard([&] { *out = dup_string(hiernet::graph_to_dot(g->g)); });
}

void hn_graph_free(hn_graph* g) { delete g; }

size_t hn_graph_order(const hn_graph* g) { return g ? g->g.order() : 0; }
size_t hn_graph_edge_count(const hn_graph* g) { return g ? g->g.edge_count() : 0; }
size_t hn_graph_root(const hn_graph* g) { return g ? g->g.root() : 0; }

hn_status hn_graph_edge(const hn_graph* g, size_t index, size_t* u, size_t* v, double* w) {
  HN_NEED(g);
  return guard([&] {
    if (index >= g->g.edge_count()) hiernet::fail(hiernet::ErrorCode::kOutOfRange, "edge index out of range");
    const auto& e = g->g.edges()[index];
    if (u) *u = e.u;
    if (v) *v = e.v;
    if (w) *w = e.w;
  });
}

hn_status hn_graph_invariants(const hn_graph* g, hn_invariants* out) {
  HN_NEED(g);
  HN_NEED(out);
  return guard([&] {
    const auto r = hiernet::invariants(g->g);
    *out = {r.order,          r.edge_count,    r.diameter,   r.weighted_diameter, r.root_eccentricity,
            r.weighted_root_eccentricity, r.mean_distance, r.mean_distance_distinct, r.max_degree,
            r.max_valency,    r.total_edge_weight};
  });
}

hn_status hn_graph_cheeger(const hn_graph* g, int exact, double* value, size_t** cut, size_t* cut_len) {
  HN_NEED(g);
  HN_NEED(value);
  return guard([&] {
    const auto r = hiernet::cheeger(g->g, exact ? hiernet::CheegerMode::kExact : hiernet::CheegerMode::kHeuristic);
    *value = r.value;
    if (cut) *cut = dup_array<size_t>(r.cut);
    if (cut_len) *cut_len = r.cut.size();
  });
}

hn_status hn_graph_spectrum(const hn_graph* g, double** values, size_t* count) {
  HN_NEED(g);
  HN_NEED(values);
  HN_NEED(count);
  return guard([&] {
    const auto s = hiernet::dense_spectrum(g->g);
    *values = dup_array<double>(s.values);
    *count = s.size();
  });
}

hn_status hn_graph_spectral_bounds(const hn_graph* g, hn_bounds* out) {
  HN_NEED(g);
  HN_NEED(out);
  return guard([&] { *out = bounds_of(hiernet::spectral_bounds(g->g)); });
}

hn_status hn_spectral_bounds_from(size_t order, double lambda2, double max_valency, hn_bounds* out) {
  HN_NEED(out);
  return guard([&] { *out = bounds_of(hiernet::spectral_bounds(order, lambda2, max_valency)); });
}

// ---- specs -----------------------------------------------------------------

hn_status hn_spec_create(const hn_graph* const* bases, size_t levels, const double* alphas, int truncated,
                         hn_spec** out) {
  HN_NEED(bases);
  HN_NEED(out);
  return guard([&] {
    hiernet::HierarchySpec s;
    for (std::size_t i = 0; i < levels; ++i) {
      need(bases[i], "base graph");
      s.bases.push_back(bases[i]->g);
    }
    if (alphas)
      s.alphas.assign(alphas, alphas + levels);
    else
      s.alphas.assign(levels, 1.0);
    s.truncated = truncated != 0;
    s.validate();
    *out = new hn_spec{std::move(s)};
  });
}

hn_status hn_spec_from_json(const char* json, hn_spec** out) {
  HN_NEED(json);
  HN_NEED(out);
  return guard([&] { *out = new hn_spec{hiernet::spec_from_json(json)}; });
}

hn_status hn_spec_to_json(const hn_spec* spec, char** out) {
  HN_NEED(spec);
  HN_NEED(out);
  return guard([&] { *out = dup_string(hiernet::spec_to_json(spec->s)); });
}

void hn_spec_free(hn_spec* spec) { delete spec; }

size_t hn_spec_levels(const hn_spec* spec) { return spec ? spec->s.levels() : 0; }
size_t hn_spec_order(const hn_spec* spec) { return spec ? spec->s.order() : 0; }
int hn_spec_truncated(const hn_spec* spec) { return spec && spec->s.truncated ? 1 : 0; }

hn_status hn_spec_build(const hn_spec* spec, hn_graph** out) {
  HN_NEED(spec);
  HN_NEED(out);
  return guard([&] { *out = new hn_graph{hiernet::build_hierarchy(spec->s)}; });
}

hn_status hn_spec_recursive_spectrum(const hn_spec* spec, int companion, unsigned jobs, double** values,
                                     size_t* count) {
  HN_NEED(spec);
  HN_NEED(values);
  HN_NEED(count);
  return guard([&] {
    hiernet::RecursiveOptions opts;
    opts.method = companion ? hiernet::RootMethod::kCompanion : hiernet::RootMethod::kBlock;
    opts.jobs = jobs;
    const auto s = hiernet::recursive_spectrum(spec->s, opts);
    *values = dup_array<double>(s.values);
    *count = s.size();
  });
}

hn_status hn_spec_address(const hn_spec* spec, size_t index, size_t* digits) {
  HN_NEED(spec);
  HN_NEED(digits);
  return guard([&] {
    const auto a = hiernet::AddressCodec(spec->s).address(index);
    std::copy(a.digits.begin(), a.digits.end(), digits);
  });
}

hn_status hn_spec_index(const hn_spec* spec, const size_t* digits, size_t* index) {
  HN_NEED(spec);
  HN_NEED(digits);
  HN_NEED(index);
  return guard([&] {
    hiernet::NodeAddress a{{digits, digits + spec->s.levels()}};
    *index = hiernet::AddressCodec(spec->s).index(a);
  });
}

// ---- closed forms ----------------------------------------------------------

hn_status hn_spec_formulas(const hn_spec* spec, hn_formulas* out) {
  HN_NEED(spec);
  HN_NEED(out);
  return guard([&] {
    const auto& s = spec->s;
    for (const auto& b : s.bases)
      if (!(b == s.bases.front()))
        hiernet::fail(hiernet::ErrorCode::kInvalidArgument, "closed forms need one repeated base graph");
    const auto f = hiernet::hierarchy_formulas(hiernet::BaseInvariants::measure(s.bases.front()), s.levels(), s.alphas);
    *out = {f.diameter,        f.root_eccentricity, f.weighted_diameter, f.weighted_root_eccentricity,
            f.max_degree,      f.total_edge_weight, f.regime ? static_cast<int>(*f.regime) : -1};
  });
}

const char* hn_regime_name(int regime) {
  if (regime < 0 || regime > 4) return "none";
  return hiernet::regime_name(static_cast<hiernet::Regime>(regime)).data();
}

hn_status hn_kn_weighted_diameter(size_t n, size_t k, double alpha, double* out) {
  HN_NEED(out);
  return guard([&] { *out = hiernet::kn_weighted_diameter(n, k, alpha); });
}

hn_status hn_kn_total_weight(size_t n, size_t k, double alpha, double* out) {
  HN_NEED(out);
  return guard([&] { *out = hiernet::kn_total_weight(n, k, alpha); });
}

hn_status hn_truncated_node_count(size_t n, size_t k, uint64_t* out) {
  HN_NEED(out);
  return guard([&] { *out = hiernet::truncated_node_count(n, k); });
}

hn_status hn_degree_diameter(double max_degree, double diameter, double treewidth, double* moore_bound,
                             double* capacity) {
  return guard([&] {
    const auto b = hiernet::degree_diameter_checks(
        max_degree, diameter, treewidth > 0.0 ? std::optional<double>(treewidth) : std::nullopt);
    if (moore_bound) *moore_bound = b.moore_bound;
    if (capacity) *capacity = b.treewidth_capacity.value_or(std::numeric_limits<double>::quiet_NaN());
  });
}

// ---- GHZ -------------------------------------------------------------------

hn_status hn_ghz_probability_graph(const hn_spec* spec, double p0, double alpha, hn_graph** out) {
  HN_NEED(spec);
  HN_NEED(out);
  return guard([&] { *out = new hn_graph{hiernet::probability_weights(spec->s, p0, alpha)}; });
}

hn_status hn_ghz_uniform_probability(const hn_graph* g, double p0, hn_graph** out) {
  HN_NEED(g);
  HN_NEED(out);
  return guard([&] { *out = new hn_graph{hiernet::uniform_probability(g->g, p0)}; });
}

hn_status hn_ghz_center(const hn_graph* p, size_t* out) {
  HN_NEED(p);
  HN_NEED(out);
  return guard([&] {
    hiernet::check_probabilities(p->g);
    *out = hiernet::center_node(hiernet::time_weights(p->g));
  });
}

hn_status hn_ghz_deterministic_time(const hn_graph* g, size_t start, double* out) {
  HN_NEED(g);
  HN_NEED(out);
  return guard([&] { *out = hiernet::deterministic_ghz_time(g->g, start); });
}

hn_status hn_ghz_simulate(const hn_graph* p, size_t start, uint64_t seed, uint64_t* steps) {
  HN_NEED(p);
  HN_NEED(steps);
  return guard([&] {
    hiernet::check_probabilities(p->g);
    *steps = hiernet::simulate_ghz(p->g, start, seed);
  });
}

hn_status hn_ghz_trials(const hn_graph* p, size_t start, size_t trials, uint64_t seed, double p0, unsigned jobs,
                        hn_trial_stats* out) {
  HN_NEED(p);
  HN_NEED(out);
  return guard([&] {
    const auto s = hiernet::ghz_trials(p->g, start, trials, seed, p0, jobs);
    *out = {s.trials, s.start, s.mean, s.std, s.min, s.max, s.seed, s.prediction, s.bound_lo, s.bound_hi};
  });
}

// ---- circuits --------------------------------------------------------------

hn_status hn_circuit_from_gates(const size_t* us, const size_t* vs, size_t gate_count, size_t qubits,
                                hn_circuit** out) {
  HN_NEED(out);
  if (gate_count > 0) {
    HN_NEED(us);
    HN_NEED(vs);
  }
  return guard([&] {
    std::vector<hiernet::Gate> gates(gate_count);
    for (std::size_t i = 0; i < gate_count; ++i) gates[i] = {us[i], vs[i]};
    *out = new hn_circuit{hiernet::circuit_graph(gates, qubits), gate_count};
  });
}

hn_status hn_circuit_parse(const char* text, size_t qubits, hn_circuit** out) {
  HN_NEED(text);
  HN_NEED(out);
  return guard([&] {
    const auto gates = hiernet::parse_gates(text);
    *out = new hn_circuit{hiernet::circuit_graph(gates, qubits), gates.size()};
  });
}

hn_status hn_circuit_random(size_t qubits, size_t gates, uint64_t seed, hn_circuit** out) {
  HN_NEED(out);
  return guard([&] {
    const auto g = hiernet::random_circuit(qubits, gates, seed);
    *out = new hn_circuit{hiernet::circuit_graph(g, qubits), g.size()};
  });
}

void hn_circuit_free(hn_circuit* c) { delete c; }
size_t hn_circuit_qubits(const hn_circuit* c) { return c ? c->g.order() : 0; }
size_t hn_circuit_gate_count(const hn_circuit* c) { return c ? c->gates : 0; }

hn_status hn_place(const hn_circuit* c, const hn_spec* machine, uint64_t seed, hn_placement* out) {
  HN_NEED(c);
  HN_NEED(machine);
  HN_NEED(out);
  return guard([&] {
    const auto p = hiernet::place(c->g, machine->s, seed);
    *out = {dup_array<size_t>(p.mapping), p.mapping.size(), p.cost, p.naive_cost, p.used_naive ? 1 : 0};
  });
}

hn_status hn_placement_cost(const hn_circuit* c, const hn_graph* machine, const size_t* mapping, size_t qubits,
                            uint64_t* out) {
  HN_NEED(c);
  HN_NEED(machine);
  HN_NEED(mapping);
  HN_NEED(out);
  return guard([&] { *out = hiernet::placement_cost(c->g, machine->g, std::span<const size_t>(mapping, qubits)); });
}

// ---- Pareto ----------------------------------------------------------------

hn_status hn_graph_metrics(const hn_graph* g, hn_metrics* out) {
  HN_NEED(g);
  HN_NEED(out);
  return guard([&] {
    const auto t = hiernet::measure_tuple("", g->g);
    *out = {t.order, t.weighted_diameter, t.max_degree, t.total_edge_weight};
  });
}

hn_status hn_pareto_front(const hn_metrics* records, size_t count, int* survives) {
  if (count > 0) {
    HN_NEED(records);
    HN_NEED(survives);
  }
  return guard([&] {
    std::vector<hiernet::MetricTuple> recs(count);
    for (std::size_t i = 0; i < count; ++i)
      recs[i] = {std::to_string(i), records[i].order, records[i].weighted_diameter, records[i].max_degree,
                 records[i].total_edge_weight};
    const auto front = hiernet::pareto_front(recs);
    for (std::size_t i = 0; i < count; ++i) survives[i] = 0;
    for (auto i : front) survives[i] = 1;
  });
}

// ---- misc ------------------------------------------------------------------

hn_status hn_hash(const char* text, char** out) {
  HN_NEED(text);
  HN_NEED(out);
  return guard([&] { *out = dup_string(hiernet::fnv1a_hex(text)); });
}

hn_status hn_read_file(const char* path, char** out) {
  HN_NEED(path);
  HN_NEED(out);
  return guard([&] { *out = dup_string(hiernet::read_text_file(path)); });
}

hn_status hn_write_file(const char* path, const char* text) {
  HN_NEED(path);
  HN_NEED(text);
  return guard([&] { hiernet::write_text_file(path, text); });
}

}  // extern "C"
