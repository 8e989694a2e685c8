#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hiernet/graph.hpp"
#include "hiernet/placement.hpp"
#include "hiernet/products.hpp"

namespace hiernet {

// {"edges": [[i, j, w], ...], "modules": [...], "order": N, "root": r}
// Edges canonical (i < j, sorted); "modules" only when present. Keys sorted.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(std::string_view text);

// Base entries are either graph JSON or a shorthand
//   {"kind": "complete" | "cycle" | "path" | "star" | "porcupine", "n": int}
//   {"kind": "grid", "dims": int, "side": int}
// A single base with "levels": k is repeated k times. "geometric_alpha"
// overrides "alphas"; both absent means every alpha is 1.
HierarchySpec spec_from_json(std::string_view text);
std::string spec_to_json(const HierarchySpec& spec);

// True when the JSON text carries a "bases" key.
bool is_spec_json(std::string_view text);

// Graph or spec JSON; specs are built.
Graph load_graph_json(std::string_view text);

Graph standard_graph(std::string_view kind, std::size_t a, std::size_t b = 0);

std::string graph_to_dot(const Graph& g);

// One "u v" pair per line; '#' starts a comment.
std::vector<Gate> parse_gates(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace hiernet
