#include "hiernet/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hiernet/error.hpp"

namespace hiernet {

using nlohmann::json;

namespace {

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::kParse, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("bad value for '") + key + "': " + e.what());
  }
}

json graph_json(const Graph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.w});
  json j;
  j["order"] = g.order();
  j["root"] = g.root();
  j["edges"] = std::move(edges);
  if (!g.module_sizes().empty())
    j["modules"] = std::vector<std::size_t>(g.module_sizes().begin(), g.module_sizes().end());
  return j;
}

Graph graph_of(const json& j) {
  if (!j.is_object()) fail(ErrorCode::kParse, "graph must be a JSON object");
  if (j.contains("kind")) {
    const auto kind = field<std::string>(j, "kind");
    if (kind == "grid") return standard_graph(kind, field<std::size_t>(j, "dims"), field<std::size_t>(j, "side"));
    return standard_graph(kind, field<std::size_t>(j, "n"));
  }
  const auto order = field<std::size_t>(j, "order");
  const auto root = j.contains("root") ? field<std::size_t>(j, "root") : 0;
  std::vector<Edge> edges;
  const json& arr = j.contains("edges") ? j.at("edges") : json::array();
  if (!arr.is_array()) fail(ErrorCode::kParse, "'edges' must be an array");
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3) fail(ErrorCode::kParse, "edge must be [i, j] or [i, j, w]");
    try {
      edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), e.size() == 3 ? e[2].get<double>() : 1.0});
    } catch (const json::exception& ex) {
      fail(ErrorCode::kParse, std::string("bad edge entry: ") + ex.what());
    }
  }
  Graph g = Graph::build(order, std::move(edges), root);
  if (j.contains("modules")) g = g.with_module_sizes(field<std::vector<std::size_t>>(j, "modules"));
  return g;
}

HierarchySpec spec_of(const json& j) {
  if (!j.is_object() || !j.contains("bases")) fail(ErrorCode::kParse, "spec must be an object with 'bases'");
  const json& arr = j.at("bases");
  if (!arr.is_array() || arr.empty()) fail(ErrorCode::kParse, "'bases' must be a nonempty array");
  HierarchySpec s;
  for (const auto& b : arr) s.bases.push_back(graph_of(b));
  if (j.contains("levels")) {
    const auto k = field<std::size_t>(j, "levels");
    if (s.bases.size() != 1) fail(ErrorCode::kParse, "'levels' needs exactly one base");
    if (k < 1) fail(ErrorCode::kParse, "'levels' must be at least 1");
    s.bases.assign(k, s.bases.front());
  }
  s.truncated = j.contains("truncated") && field<bool>(j, "truncated");
  if (j.contains("geometric_alpha") && !j.at("geometric_alpha").is_null()) {
    s = HierarchySpec::geometric(std::move(s.bases), field<double>(j, "geometric_alpha"), s.truncated);
  } else if (j.contains("alphas")) {
    s.alphas = field<std::vector<double>>(j, "alphas");
  } else {
    s.alphas.assign(s.bases.size(), 1.0);
  }
  s.validate();
  return s;
}

}  // namespace

std::string graph_to_json(const Graph& g) { return graph_json(g).dump(); }

Graph graph_from_json(std::string_view text) { return graph_of(parse(text)); }

HierarchySpec spec_from_json(std::string_view text) { return spec_of(parse(text)); }

std::string spec_to_json(const HierarchySpec& spec) {
  json j;
  j["bases"] = json::array();
  for (const auto& b : spec.bases) j["bases"].push_back(graph_json(b));
  j["alphas"] = spec.alphas;
  j["truncated"] = spec.truncated;
  return j.dump();
}

bool is_spec_json(std::string_view text) {
  const json j = parse(text);
  return j.is_object() && j.contains("bases");
}

Graph load_graph_json(std::string_view text) {
  const json j = parse(text);
  if (j.is_object() && j.contains("bases")) return build_hierarchy(spec_of(j));
  return graph_of(j);
}

Graph standard_graph(std::string_view kind, std::size_t a, std::size_t b) {
  if (kind == "complete") return complete_graph(a);
  if (kind == "cycle") return cycle_graph(a);
  if (kind == "path") return path_graph(a);
  if (kind == "star") return star_graph(a);
  if (kind == "porcupine") return porcupine_graph(a);
  if (kind == "grid") return grid_graph(a, b);
  fail(ErrorCode::kInvalidArgument, "unknown graph kind '" + std::string(kind) + "'");
}

std::string graph_to_dot(const Graph& g) {
  std::ostringstream os;
  os.precision(17);
  os << "graph G {\n";
  os << "  " << g.root() << " [shape=doublecircle];\n";
  for (std::size_t v = 0; v < g.order(); ++v)
    if (g.degree(v) == 0 && v != g.root()) os << "  " << v << ";\n";
  for (const auto& e : g.edges()) os << "  " << e.u << " -- " << e.v << " [label=\"" << e.w << "\"];\n";
  os << "}\n";
  return os.str();
}

std::vector<Gate> parse_gates(std::string_view text) {
  std::vector<Gate> gates;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long u = 0, v = 0;
    if (!(ls >> u)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        fail(ErrorCode::kParse, "gate list line " + std::to_string(lineno) + ": expected 'u v'");
      continue;
    }
    std::string rest;
    if (!(ls >> v) || (ls >> rest) || u < 0 || v < 0)
      fail(ErrorCode::kParse, "gate list line " + std::to_string(lineno) + ": expected 'u v'");
    gates.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  }
  return gates;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::kIo, "write to '" + path + "' failed");
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hiernet
