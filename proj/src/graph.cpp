#include "hardcount/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace hardcount {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw parse_error("vertex count must be nonnegative");
    Graph g;
    g.n_ = n;
    g.adj_.assign(static_cast<std::size_t>(n), {});
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw parse_error("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
        if (u == v) throw parse_error("self-loop at vertex " + std::to_string(u));
        auto e = std::minmax(u, v);
        if (!seen.insert({e.first, e.second}).second)
            throw parse_error("duplicate edge " + std::to_string(e.first) + " " + std::to_string(e.second));
    }
    g.edges_.assign(seen.begin(), seen.end());
    for (auto [u, v] : g.edges_) {
        g.adj_[static_cast<std::size_t>(u)].push_back(v);
        g.adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nb : g.adj_) {
        std::sort(nb.begin(), nb.end());
        g.max_degree_ = std::max(g.max_degree_, static_cast<int>(nb.size()));
    }
    // Cheap sound detection of claw-freeness on small graphs: look for an
    // induced K_{1,3} directly.
    if (n > 0 && n <= 48 && g.max_degree_ >= 3) {
        bool claw = false;
        for (int v = 0; v < n && !claw; ++v) {
            const auto& nb = g.adj_[static_cast<std::size_t>(v)];
            const int d = static_cast<int>(nb.size());
            for (int a = 0; a < d && !claw; ++a)
                for (int b = a + 1; b < d && !claw; ++b) {
                    if (g.has_edge(nb[static_cast<std::size_t>(a)], nb[static_cast<std::size_t>(b)]))
                        continue;
                    for (int c = b + 1; c < d; ++c) {
                        if (!g.has_edge(nb[static_cast<std::size_t>(a)], nb[static_cast<std::size_t>(c)]) &&
                            !g.has_edge(nb[static_cast<std::size_t>(b)], nb[static_cast<std::size_t>(c)])) {
                            claw = true;
                            break;
                        }
                    }
                }
        }
        if (!claw) g.claw_free_flag_ = true;
    }
    return g;
}

bool Graph::has_edge(int u, int v) const {
    const auto& nb = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<int> Graph::bfs_distances(int src, int cap) const {
    std::vector<int> dist(static_cast<std::size_t>(n_), -1);
    std::deque<int> q{src};
    dist[static_cast<std::size_t>(src)] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (cap >= 0 && dist[static_cast<std::size_t>(u)] >= cap) continue;
        for (int w : neighbors(u)) {
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                q.push_back(w);
            }
        }
    }
    return dist;
}

mpq_class critical_fugacity(int max_degree) {
    if (max_degree < 3) throw precondition_error("critical fugacity needs max degree >= 3");
    mpz_class num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(max_degree - 1),
                  static_cast<unsigned long>(max_degree - 1));
    mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(max_degree - 2),
                  static_cast<unsigned long>(max_degree));
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

mpq_class critical_density(int max_degree) {
    mpq_class lc = critical_fugacity(max_degree);
    mpq_class q = lc / (1 + (max_degree + 1) * lc);
    q.canonicalize();
    return q;
}

Graph line_graph(const Graph& g) {
    if (g.edge_count() == 0) throw precondition_error("line graph of a graph with no edges");
    const auto& es = g.edges();
    const int m = static_cast<int>(es.size());
    std::vector<std::pair<int, int>> ledges;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            auto [a, b] = es[static_cast<std::size_t>(i)];
            auto [c, d] = es[static_cast<std::size_t>(j)];
            if (a == c || a == d || b == c || b == d) ledges.emplace_back(i, j);
        }
    Graph lg = Graph::from_edges(m, ledges);
    lg.set_claw_free_flag();
    return lg;
}

std::vector<int> separated_set(const Graph& g) {
    std::vector<char> removed(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<int> s;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (removed[static_cast<std::size_t>(v)]) continue;
        s.push_back(v);
        auto dist = g.bfs_distances(v, 3);
        for (int u = 0; u < g.vertex_count(); ++u)
            if (dist[static_cast<std::size_t>(u)] >= 0 && dist[static_cast<std::size_t>(u)] <= 3)
                removed[static_cast<std::size_t>(u)] = 1;
    }
    return s;
}

std::vector<int> greedy_independent_set(const Graph& g, int k) {
    if (k < 0) throw precondition_error("independent set size must be nonnegative");
    std::vector<char> blocked(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<int> s;
    for (int v = 0; v < g.vertex_count() && static_cast<int>(s.size()) < k; ++v) {
        if (blocked[static_cast<std::size_t>(v)]) continue;
        s.push_back(v);
        blocked[static_cast<std::size_t>(v)] = 1;
        for (int w : g.neighbors(v)) blocked[static_cast<std::size_t>(w)] = 1;
    }
    if (static_cast<int>(s.size()) < k)
        throw precondition_error("greedy ran out of vertices before reaching size " + std::to_string(k));
    return s;
}

int independence_number_deg2(const Graph& g) {
    if (g.max_degree() > 2)
        throw precondition_error("independence_number_deg2 requires max degree <= 2");
    // Components of a max-degree-2 graph are isolated vertices, paths, cycles.
    const int n = g.vertex_count();
    std::vector<char> vis(static_cast<std::size_t>(n), 0);
    int total = 0;
    for (int v = 0; v < n; ++v) {
        if (vis[static_cast<std::size_t>(v)]) continue;
        // Collect the component and classify.
        std::vector<int> comp;
        std::deque<int> q{v};
        vis[static_cast<std::size_t>(v)] = 1;
        int edge_ends = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            comp.push_back(u);
            edge_ends += g.degree(u);
            for (int w : g.neighbors(u))
                if (!vis[static_cast<std::size_t>(w)]) {
                    vis[static_cast<std::size_t>(w)] = 1;
                    q.push_back(w);
                }
        }
        const int sz = static_cast<int>(comp.size());
        const int edges = edge_ends / 2;
        if (edges == sz) total += sz / 2;           // cycle
        else total += (sz + 1) / 2;                  // path or isolated vertex
    }
    return total;
}

} // namespace hardcount
