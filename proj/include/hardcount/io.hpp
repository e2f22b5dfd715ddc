#ifndef HARDCOUNT_IO_HPP
#define HARDCOUNT_IO_HPP

#include <string>

#include "hardcount/graph.hpp"

namespace hardcount {

// Edge-list text format: header "n m", then one "u v" per line, 0-based ids.
// JSON alternative: {"n":..., "edges":[[u,v],...]}; detected by leading '{'.
Graph parse_graph(const std::string& text);

// Canonical edge-list form: sorted edges, u < v.
std::string serialize_graph(const Graph& g);

Graph load_graph_file(const std::string& path);

} // namespace hardcount

#endif
