#ifndef HARDCOUNT_CLUSTER_HPP
#define HARDCOUNT_CLUSTER_HPP

#include <functional>
#include <vector>

#include <gmpxx.h>

#include "hardcount/graph.hpp"
#include "hardcount/parallel.hpp"

namespace hardcount {

inline constexpr int kClusterGuardDefault = 10;

// Connected vertex multiset: support vertices (ascending) with multiplicities.
struct Cluster {
    std::vector<int> support;
    std::vector<int> multiplicity;
    int size = 0;                 // sum of multiplicities
    mpz_class ordering_count;     // size! / prod(multiplicity!)
};

struct OrderContribution {
    int order = 0;
    double contribution = 0.0; // sum over clusters of this size of ordering_count * phi * lambda^order
    double cumulative = 0.0;
    double kp_bound = 0.0;     // n (lambda e (Delta+1))^order
};

struct ClusterSum {
    double value = 0.0;
    int truncation_order = 0;
    double kp_tail_bound = 0.0;
    bool certified = false; // lambda e (Delta+1) < 1
    std::vector<OrderContribution> per_order;
};

// Ursell function of a small graph given as adjacency bitmask rows:
// (1/|V|!) sum over spanning connected edge subsets of (-1)^{|A|}.
// Exactly 0 for disconnected H.  Guarded at |V| <= 10.
mpq_class ursell(const std::vector<std::uint16_t>& adjacency_rows);

// Visits every connected multiset of total size <= max_size exactly once.
// Deterministic order: by root (= smallest support vertex), then DFS.
void enumerate_clusters(const Graph& g, int max_size,
                        const std::function<void(const Cluster&)>& visit);

// Exact per-order aggregates c_j = sum_{|M|=j} ordering_count(M) phi(H(M)),
// j = 1..t.  These are the Taylor coefficients of log Z at 0.  Parallelizes
// over root vertices with a deterministic ordered reduction.
std::vector<mpq_class> log_z_cluster_coefficients(const Graph& g, int t,
                                                  par::Mode mode = par::default_mode());

// KP tail: n * sum_{j>=t} j^k (lambda e (Delta+1))^j; k=0 gives the plain
// geometric tail n (lambda e (Delta+1))^t / (1-x).
double kp_tail(double lambda, int max_degree, long long n, int t, int k);

ClusterSum truncated_log_Z(const Graph& g, double lambda, int t,
                           par::Mode mode = par::default_mode());

ClusterSum truncated_cumulant(const Graph& g, double lambda, int k, int t,
                              par::Mode mode = par::default_mode());

// Smallest t with n * sum_{j>=t} j^k x^j <= eps * lambda * n.  Throws when
// lambda e (Delta+1) >= 1.
int select_truncation_order(double lambda, int max_degree, double eps, long long n, int k);

} // namespace hardcount

#endif
