#ifndef HARDCOUNT_GRAPH_HPP
#define HARDCOUNT_GRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hardcount/errors.hpp"

namespace hardcount {

// Simple undirected graph, immutable after construction.  Neighbor lists are
// sorted, vertex ids are 0..n-1, max degree is cached.
class Graph {
public:
    Graph() = default;

    // Validates: ids in range, no self-loops, no duplicate edges.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int max_degree() const { return max_degree_; }

    std::span<const int> neighbors(int v) const {
        return {adj_[static_cast<std::size_t>(v)].data(), adj_[static_cast<std::size_t>(v)].size()};
    }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    bool has_edge(int u, int v) const;

    // Edges as (u,v) with u < v, sorted lexicographically.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    // True when max degree <= 2; every such graph is claw-free.  Line graphs
    // constructed by line_graph() carry the flag explicitly.
    bool claw_free_hint() const { return max_degree_ <= 2 || claw_free_flag_; }
    void set_claw_free_flag() { claw_free_flag_ = true; }

    // BFS distances from src, -1 for unreachable.
    std::vector<int> bfs_distances(int src, int cap = -1) const;

private:
    int n_ = 0;
    int max_degree_ = 0;
    bool claw_free_flag_ = false;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
};

enum class ModelKind { hard_core_on_graph, monomer_dimer_via_line_graph };

struct ModelParams {
    double lambda = 0.0;
    double delta = 0.1; // margin in (0,1)
    ModelKind model = ModelKind::hard_core_on_graph;
};

// (Delta-1)^(Delta-1) / (Delta-2)^Delta, exact.  Delta >= 3 required.
mpq_class critical_fugacity(int max_degree);

// lambda_c / (1 + (Delta+1) lambda_c), exact.  Delta >= 3 required.
mpq_class critical_density(int max_degree);

// One vertex per edge of g, adjacent iff the edges share an endpoint.
// Rejects graphs with no edges.  The result is marked claw-free.
Graph line_graph(const Graph& g);

// Greedy 4-separated set over ascending vertex ids: take the first available
// vertex, discard everything within distance 3, repeat.
std::vector<int> separated_set(const Graph& g);

// Greedy independent set of size exactly k over ascending ids; throws
// precondition_error when the greedy sweep runs out of vertices.
std::vector<int> greedy_independent_set(const Graph& g, int k);

// Largest independent set size.  Exact for max degree <= 2 (path/cycle
// components); otherwise falls back to a search over the exact coefficient
// machinery and is intended for small graphs.
int independence_number_deg2(const Graph& g);

} // namespace hardcount

#endif
