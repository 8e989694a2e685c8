#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hiernet/hiernet.h"

using nlohmann::json;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void ok(hn_status s) {
  if (s != HN_OK) throw Failure(std::string(hn_status_name(s)) + ": " + hn_last_error());
}

std::string take(char* s) {
  std::string out = s ? s : "";
  hn_free(s);
  return out;
}

using GraphPtr = std::unique_ptr<hn_graph, decltype(&hn_graph_free)>;
using SpecPtr = std::unique_ptr<hn_spec, decltype(&hn_spec_free)>;
using CircuitPtr = std::unique_ptr<hn_circuit, decltype(&hn_circuit_free)>;

std::string read_file(const std::string& path) {
  char* s = nullptr;
  ok(hn_read_file(path.c_str(), &s));
  return take(s);
}

std::string hash_of(const std::string& text) {
  char* s = nullptr;
  ok(hn_hash(text.c_str(), &s));
  return take(s);
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

// Shared flags.
struct Common {
  bool json_out = false;
  bool csv_out = false;
  std::string out;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
};

void add_format(CLI::App* c, Common& o) {
  auto* j = c->add_flag("--json", o.json_out, "JSON output (default)");
  auto* v = c->add_flag("--csv", o.csv_out, "CSV output");
  j->excludes(v);
  c->add_option("--out", o.out, "write output to this file instead of stdout");
}

void emit(const Common& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    ok(hn_write_file(o.out.c_str(), text.c_str()));
  }
}

json meta(const std::string& input_hash, std::optional<std::uint64_t> seed) {
  json m{{"version", hn_version()}, {"spec_hash", input_hash}};
  if (seed) m["seed"] = *seed;
  return m;
}

std::string csv_meta(const std::string& input_hash, std::optional<std::uint64_t> seed) {
  std::string s = std::string("# hiernet ") + hn_version() + " spec_hash=" + input_hash;
  if (seed) s += " seed=" + std::to_string(*seed);
  return s + "\n";
}

// Shortest text that reads back to the same double.
std::string num(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

// Graph input: --graph FILE (graph or spec JSON), --spec FILE, or --kind with sizes.
struct GraphInput {
  std::string graph_file, spec_file, kind;
  std::size_t n = 0, dims = 2, side = 0;

  void add(CLI::App* c) {
    auto* g = c->add_option("--graph", graph_file, "graph JSON (spec JSON is built)")->check(CLI::ExistingFile);
    auto* s = c->add_option("--spec", spec_file, "hierarchy spec JSON")->check(CLI::ExistingFile);
    auto* k = c->add_option("--kind", kind, "complete, cycle, path, star, porcupine or grid");
    c->add_option("--n", n, "order for --kind (m for porcupine)");
    c->add_option("--dims", dims, "grid dimensions");
    c->add_option("--side", side, "grid side");
    g->excludes(s)->excludes(k);
    s->excludes(k);
  }

  std::string label() const {
    if (!graph_file.empty()) return stem(graph_file);
    if (!spec_file.empty()) return stem(spec_file);
    return kind == "grid" ? "grid" + std::to_string(dims) + "d-" + std::to_string(side) : kind + std::to_string(n);
  }

  // Text that identifies the input, hashed into metadata.
  std::string identity() const {
    if (!graph_file.empty()) return read_file(graph_file);
    if (!spec_file.empty()) return read_file(spec_file);
    return kind + ":" + std::to_string(n) + ":" + std::to_string(dims) + ":" + std::to_string(side);
  }

  bool has_spec() const { return !spec_file.empty(); }

  SpecPtr spec() const {
    if (spec_file.empty()) throw Usage("--spec is required here");
    hn_spec* s = nullptr;
    ok(hn_spec_from_json(read_file(spec_file).c_str(), &s));
    return {s, hn_spec_free};
  }

  GraphPtr graph() const {
    hn_graph* g = nullptr;
    if (!graph_file.empty() || !spec_file.empty()) {
      ok(hn_graph_from_json(identity().c_str(), &g));
    } else if (!kind.empty()) {
      ok(hn_graph_standard(kind.c_str(), kind == "grid" ? dims : n, side, &g));
    } else {
      throw Usage("give --graph, --spec or --kind");
    }
    return {g, hn_graph_free};
  }
};

void require_seed(const Common& o) {
  if (!o.seed) throw Usage("--seed is required for randomized commands");
}

// ---------------------------------------------------------------------------

int cmd_build(const Common& o, const GraphInput& in, bool dot) {
  const auto g = in.graph();
  if (dot) {
    char* s = nullptr;
    ok(hn_graph_to_dot(g.get(), &s));
    emit(o, take(s));
    return 0;
  }
  char* s = nullptr;
  ok(hn_graph_to_json(g.get(), &s));
  json j = json::parse(take(s));
  j["meta"] = meta(hash_of(in.identity()), std::nullopt);
  emit(o, j.dump() + "\n");
  return 0;
}

int cmd_invariants(const Common& o, const GraphInput& in, bool bounds) {
  const auto g = in.graph();
  hn_invariants v;
  ok(hn_graph_invariants(g.get(), &v));
  json j{{"order", v.order},
         {"edge_count", v.edge_count},
         {"diameter", v.diameter},
         {"weighted_diameter", v.weighted_diameter},
         {"root_eccentricity", v.root_eccentricity},
         {"weighted_root_eccentricity", v.weighted_root_eccentricity},
         {"mean_distance", v.mean_distance},
         {"mean_distance_distinct", v.mean_distance_distinct},
         {"max_degree", v.max_degree},
         {"max_valency", v.max_valency},
         {"total_edge_weight", v.total_edge_weight}};
  if (bounds) {
    hn_bounds b;
    ok(hn_graph_spectral_bounds(g.get(), &b));
    j["spectral_bounds"] = {{"lambda2", b.lambda2},         {"diameter_lo", b.diameter_lo},
                            {"diameter_hi", b.diameter_hi}, {"mean_distance_lo", b.mean_dist_lo},
                            {"mean_distance_hi", b.mean_dist_hi}, {"cheeger_lo", b.cheeger_lo},
                            {"cheeger_hi", b.cheeger_hi}};
  }
  const std::string h = hash_of(in.identity());
  if (o.csv_out) {
    std::string s = csv_meta(h, std::nullopt);
    s += "graph,N,edges,diameter,weighted_diameter,root_eccentricity,weighted_root_eccentricity,mean_distance,"
         "mean_distance_distinct,max_degree,max_valency,total_edge_weight\n";
    s += in.label() + "," + std::to_string(v.order) + "," + std::to_string(v.edge_count) + "," +
         std::to_string(v.diameter) + "," + num(v.weighted_diameter) + "," + std::to_string(v.root_eccentricity) +
         "," + num(v.weighted_root_eccentricity) + "," + num(v.mean_distance) + "," + num(v.mean_distance_distinct) +
         "," + std::to_string(v.max_degree) + "," + num(v.max_valency) + "," + num(v.total_edge_weight) + "\n";
    emit(o, s);
  } else {
    j["graph"] = in.label();
    j["meta"] = meta(h, std::nullopt);
    emit(o, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_cheeger(const Common& o, const GraphInput& in, const std::string& mode) {
  const auto g = in.graph();
  const bool exact = mode == "exact" || (mode == "auto" && hn_graph_order(g.get()) <= 24);
  double value = 0;
  size_t* cut = nullptr;
  size_t len = 0;
  ok(hn_graph_cheeger(g.get(), exact ? 1 : 0, &value, &cut, &len));
  std::vector<std::size_t> c(cut, cut + len);
  hn_free(cut);
  const std::string h = hash_of(in.identity());
  if (o.csv_out) {
    emit(o, csv_meta(h, std::nullopt) + "graph,N,mode,cheeger,cut_size\n" + in.label() + "," +
                std::to_string(hn_graph_order(g.get())) + "," + (exact ? "exact" : "heuristic") + "," + num(value) +
                "," + std::to_string(len) + "\n");
  } else {
    json j{{"graph", in.label()}, {"mode", exact ? "exact" : "heuristic"}, {"cheeger", value}, {"cut", c},
           {"meta", meta(h, std::nullopt)}};
    emit(o, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_spectrum(const Common& o, const GraphInput& in, std::string method) {
  if (method.empty()) method = in.has_spec() ? "recursive" : "dense";
  double* vals = nullptr;
  size_t n = 0;
  if (method == "dense") {
    const auto g = in.graph();
    ok(hn_graph_spectrum(g.get(), &vals, &n));
  } else {
    const auto s = in.spec();
    ok(hn_spec_recursive_spectrum(s.get(), method == "companion" ? 1 : 0, o.jobs, &vals, &n));
  }
  std::vector<double> v(vals, vals + n);
  hn_free(vals);
  const std::string h = hash_of(in.identity());
  if (o.csv_out) {
    std::string s = csv_meta(h, std::nullopt) + "index,eigenvalue\n";
    for (std::size_t i = 0; i < v.size(); ++i) s += std::to_string(i) + "," + num(v[i]) + "\n";
    emit(o, s);
  } else {
    json j{{"method", method}, {"eigenvalues", v}, {"lambda2", v.size() > 1 ? json(v[1]) : json(nullptr)},
           {"meta", meta(h, std::nullopt)}};
    emit(o, j.dump() + "\n");
  }
  return 0;
}

int cmd_formulas(const Common& o, const GraphInput& in, bool measure) {
  const auto s = in.spec();
  hn_formulas f;
  ok(hn_spec_formulas(s.get(), &f));
  json j{{"diameter", f.diameter},
         {"root_eccentricity", f.root_eccentricity},
         {"weighted_diameter", f.weighted_diameter},
         {"weighted_root_eccentricity", f.weighted_root_eccentricity},
         {"max_degree", f.max_degree},
         {"total_edge_weight", f.total_edge_weight},
         {"regime", f.regime < 0 ? json(nullptr) : json(hn_regime_name(f.regime))},
         {"order", hn_spec_order(s.get())}};
  if (measure) {
    hn_graph* g = nullptr;
    ok(hn_spec_build(s.get(), &g));
    GraphPtr gp(g, hn_graph_free);
    hn_invariants v;
    ok(hn_graph_invariants(g, &v));
    j["measured"] = {{"diameter", v.diameter},
                     {"root_eccentricity", v.root_eccentricity},
                     {"weighted_diameter", v.weighted_diameter},
                     {"weighted_root_eccentricity", v.weighted_root_eccentricity},
                     {"max_degree", v.max_degree},
                     {"total_edge_weight", v.total_edge_weight}};
  }
  const std::string h = hash_of(in.identity());
  if (o.csv_out) {
    emit(o, csv_meta(h, std::nullopt) +
                "spec,N,diameter,root_eccentricity,weighted_diameter,weighted_root_eccentricity,max_degree,"
                "total_edge_weight,regime\n" +
                in.label() + "," + std::to_string(hn_spec_order(s.get())) + "," + std::to_string(f.diameter) + "," +
                std::to_string(f.root_eccentricity) + "," + num(f.weighted_diameter) + "," +
                num(f.weighted_root_eccentricity) + "," + std::to_string(f.max_degree) + "," +
                num(f.total_edge_weight) + "," + (f.regime < 0 ? "" : hn_regime_name(f.regime)) + "\n");
  } else {
    j["meta"] = meta(h, std::nullopt);
    emit(o, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_ghz(const Common& o, const GraphInput& in, double p0, std::vector<double> alphas, std::size_t trials,
            std::optional<std::size_t> start) {
  require_seed(o);
  if (alphas.empty()) alphas.push_back(1.0);
  if (!in.has_spec() && (alphas.size() != 1 || alphas[0] != 1.0))
    throw Usage("--alpha needs a hierarchy --spec; plain graphs use uniform p0");
  const std::string h = hash_of(in.identity());
  std::string csv = csv_meta(h, o.seed) + "graph,N,alpha,p0,start,trials,mean,std,prediction,bound_lo,bound_hi,seed\n";
  json rows = json::array();
  for (double alpha : alphas) {
    hn_graph* p = nullptr;
    if (in.has_spec()) {
      const auto s = in.spec();
      ok(hn_ghz_probability_graph(s.get(), p0, alpha, &p));
    } else {
      const auto g = in.graph();
      ok(hn_ghz_uniform_probability(g.get(), p0, &p));
    }
    GraphPtr pg(p, hn_graph_free);
    std::size_t st = 0;
    if (start)
      st = *start;
    else
      ok(hn_ghz_center(p, &st));
    hn_trial_stats t;
    ok(hn_ghz_trials(p, st, trials, *o.seed, p0, o.jobs, &t));
    const std::size_t n = hn_graph_order(p);
    csv += in.label() + "," + std::to_string(n) + "," + num(alpha) + "," + num(p0) + "," + std::to_string(st) + "," +
           std::to_string(t.trials) + "," + num(t.mean) + "," + num(t.std) + "," + num(t.prediction) + "," +
           num(t.bound_lo) + "," + num(t.bound_hi) + "," + std::to_string(t.seed) + "\n";
    rows.push_back({{"graph", in.label()},
                    {"N", n},
                    {"alpha", alpha},
                    {"p0", p0},
                    {"start", st},
                    {"trials", t.trials},
                    {"mean", t.mean},
                    {"std", t.std},
                    {"min", t.min},
                    {"max", t.max},
                    {"prediction", t.prediction},
                    {"bound_lo", t.bound_lo},
                    {"bound_hi", t.bound_hi},
                    {"seed", t.seed}});
  }
  if (o.csv_out) {
    emit(o, csv);
  } else {
    json m = meta(h, o.seed);
    m["rng"] = "mt19937_64 per trial, seeded with splitmix64(seed + trial)";
    m["start_rule"] = start ? "given" : "minimum eccentricity under weights 1/p, lowest index on ties";
    emit(o, json{{"runs", rows}, {"meta", m}}.dump(2) + "\n");
  }
  return 0;
}

int cmd_place(const Common& o, const std::string& machine_file, const std::string& gates_file, std::size_t random_gates,
              std::size_t qubits, std::size_t runs) {
  require_seed(o);
  const std::string machine_text = read_file(machine_file);
  hn_spec* sp = nullptr;
  ok(hn_spec_from_json(machine_text.c_str(), &sp));
  SpecPtr spec(sp, hn_spec_free);
  if (qubits == 0) qubits = hn_spec_order(spec.get());
  std::string identity = machine_text;
  if (!gates_file.empty()) identity += read_file(gates_file);
  const std::string h = hash_of(identity);

  struct Run {
    std::uint64_t seed = 0;
    std::vector<std::size_t> mapping;
    std::uint64_t cost = 0, naive = 0;
    bool used_naive = false;
    std::size_t gates = 0;
    std::string error;
  };
  std::vector<Run> out(runs);
  auto work = [&](std::size_t i) {
    Run& r = out[i];
    r.seed = *o.seed + i;
    try {
      hn_circuit* c = nullptr;
      if (!gates_file.empty())
        ok(hn_circuit_parse(read_file(gates_file).c_str(), qubits, &c));
      else
        ok(hn_circuit_random(qubits, random_gates, r.seed, &c));
      CircuitPtr cp(c, hn_circuit_free);
      r.gates = hn_circuit_gate_count(c);
      hn_placement p;
      ok(hn_place(c, spec.get(), r.seed, &p));
      r.mapping.assign(p.mapping, p.mapping + p.qubits);
      hn_free(p.mapping);
      r.cost = p.cost;
      r.naive = p.naive_cost;
      r.used_naive = p.used_naive != 0;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  };
  const unsigned jobs = std::max(1U, std::min<unsigned>(o.jobs == 0 ? std::thread::hardware_concurrency() : o.jobs,
                                                        static_cast<unsigned>(runs)));
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&, j] {
      for (std::size_t i = j; i < runs; i += jobs) work(i);
    });
  for (auto& t : pool) t.join();
  for (const auto& r : out)
    if (!r.error.empty()) throw Failure(r.error);

  auto ratio = [](const Run& r) { return r.naive == 0 ? 1.0 : static_cast<double>(r.cost) / static_cast<double>(r.naive); };
  const std::string label = stem(machine_file);
  if (o.csv_out) {
    std::string s = csv_meta(h, o.seed) + "machine,qubits,gates,cost,naive_cost,ratio,used_naive,seed\n";
    for (const auto& r : out)
      s += label + "," + std::to_string(qubits) + "," + std::to_string(r.gates) + "," + std::to_string(r.cost) + "," +
           std::to_string(r.naive) + "," + num(ratio(r)) + "," + (r.used_naive ? "1" : "0") + "," +
           std::to_string(r.seed) + "\n";
    emit(o, s);
    return 0;
  }
  auto obj = [&](const Run& r) {
    return json{{"machine", label},  {"mapping", r.mapping},       {"cost", r.cost},
                {"naive_cost", r.naive}, {"used_naive", r.used_naive}, {"seed", r.seed}};
  };
  json j;
  if (runs == 1) {
    j = obj(out[0]);
  } else {
    double sum = 0;
    j["runs"] = json::array();
    for (const auto& r : out) {
      j["runs"].push_back(obj(r));
      sum += ratio(r);
    }
    j["mean_ratio"] = sum / static_cast<double>(runs);
  }
  j["meta"] = meta(h, o.seed);
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_pareto(const Common& o, const std::vector<std::string>& files) {
  std::vector<hn_metrics> recs;
  std::vector<std::string> labels;
  std::string identity;
  for (const auto& f : files) {
    const std::string text = read_file(f);
    identity += text;
    hn_graph* g = nullptr;
    ok(hn_graph_from_json(text.c_str(), &g));
    GraphPtr gp(g, hn_graph_free);
    hn_metrics m;
    ok(hn_graph_metrics(g, &m));
    recs.push_back(m);
    labels.push_back(stem(f));
  }
  std::vector<int> keep(recs.size(), 0);
  ok(hn_pareto_front(recs.data(), recs.size(), keep.data()));
  const std::string h = hash_of(identity);
  if (o.csv_out) {
    std::string s = csv_meta(h, std::nullopt) + "graph,N,weighted_diameter,max_degree,total_edge_weight,pareto\n";
    for (std::size_t i = 0; i < recs.size(); ++i)
      s += labels[i] + "," + std::to_string(recs[i].order) + "," + num(recs[i].weighted_diameter) + "," +
           std::to_string(recs[i].max_degree) + "," + num(recs[i].total_edge_weight) + "," + std::to_string(keep[i]) +
           "\n";
    emit(o, s);
    return 0;
  }
  json arr = json::array();
  for (std::size_t i = 0; i < recs.size(); ++i)
    arr.push_back({{"graph", labels[i]},
                   {"N", recs[i].order},
                   {"weighted_diameter", recs[i].weighted_diameter},
                   {"max_degree", recs[i].max_degree},
                   {"total_edge_weight", recs[i].total_edge_weight},
                   {"pareto", keep[i] != 0}});
  emit(o, json{{"records", arr}, {"meta", meta(h, std::nullopt)}}.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical product networks: build, measure, simulate GHZ spreading, place circuits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hn_version()));
  Common o;
  GraphInput in;
  std::uint64_t seed_value = 0;

  auto with_common = [&](CLI::App* c, bool randomized, bool graph_input) {
    add_format(c, o);
    if (randomized) c->add_option("--seed", seed_value, "random seed (required)");
    c->add_option("--jobs", o.jobs, "worker threads, 0 = all cores")->capture_default_str();
    if (graph_input) in.add(c);
  };

  auto* build = app.add_subcommand("build", "build a graph and write it as JSON or DOT");
  bool dot = false;
  with_common(build, false, true);
  build->add_flag("--dot", dot, "Graphviz DOT instead of JSON");

  auto* inv = app.add_subcommand("invariants", "distances, degrees and weights");
  bool bounds = false;
  with_common(inv, false, true);
  inv->add_flag("--bounds", bounds, "add spectral bounds");

  auto* ch = app.add_subcommand("cheeger", "Cheeger constant and a witness cut");
  std::string mode = "auto";
  with_common(ch, false, true);
  ch->add_option("--mode", mode, "exact, heuristic or auto (exact up to 24 nodes)")
      ->check(CLI::IsMember({"exact", "heuristic", "auto"}));

  auto* spec = app.add_subcommand("spectrum", "Laplacian eigenvalues");
  std::string method;
  with_common(spec, false, true);
  spec->add_option("--method", method, "recursive, companion or dense (default recursive for --spec)")
      ->check(CLI::IsMember({"recursive", "companion", "dense"}));

  auto* form = app.add_subcommand("formulas", "closed-form invariants of a hierarchy spec");
  bool measure = false;
  with_common(form, false, true);
  form->add_flag("--measure", measure, "also measure the built graph");

  auto* ghz = app.add_subcommand("ghz", "GHZ spreading Monte Carlo");
  double p0 = 0.1;
  std::vector<double> alphas;
  std::size_t trials = 200;
  std::optional<std::size_t> start;
  with_common(ghz, true, true);
  ghz->add_option("--p0", p0, "bottom-level success probability")->capture_default_str();
  ghz->add_option("--alpha", alphas, "per-level probability factor, repeatable");
  ghz->add_option("--trials", trials, "trials per point")->capture_default_str()->check(CLI::PositiveNumber);
  ghz->add_option("--start", start, "start node (default: graph center)");

  auto* place = app.add_subcommand("place", "place a circuit on a hierarchy machine");
  std::string machine, gates;
  std::size_t random_gates = 0, qubits = 0, runs = 1;
  with_common(place, true, false);
  place->add_option("--machine", machine, "machine spec JSON")->required()->check(CLI::ExistingFile);
  auto* gf = place->add_option("--gates", gates, "gate list, one 'u v' per line")->check(CLI::ExistingFile);
  auto* rg = place->add_option("--random-gates", random_gates, "random circuit with this many gates");
  gf->excludes(rg);
  place->add_option("--qubits", qubits, "circuit qubits (default: machine order)");
  place->add_option("--runs", runs, "runs with seeds seed, seed+1, ...")->capture_default_str()->check(CLI::PositiveNumber);

  auto* par = app.add_subcommand("pareto", "Pareto front over graphs of equal order");
  std::vector<std::string> files;
  with_common(par, false, false);
  par->add_option("files", files, "graph or spec JSON files")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;
    std::cerr << app.help();
    return 2;
  }

  for (auto* c : {ghz, place})
    if (c->parsed() && c->count("--seed") > 0) o.seed = seed_value;

  try {
    if (build->parsed()) return cmd_build(o, in, dot);
    if (inv->parsed()) return cmd_invariants(o, in, bounds);
    if (ch->parsed()) return cmd_cheeger(o, in, mode);
    if (spec->parsed()) return cmd_spectrum(o, in, method);
    if (form->parsed()) return cmd_formulas(o, in, measure);
    if (ghz->parsed()) return cmd_ghz(o, in, p0, alphas, trials, start);
    if (place->parsed()) {
      if (gates.empty() && random_gates == 0) throw Usage("give --gates or --random-gates");
      return cmd_place(o, machine, gates, random_gates, qubits, runs);
    }
    if (par->parsed()) return cmd_pareto(o, files);
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
