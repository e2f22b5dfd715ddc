#include "hardcount/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace hardcount {

namespace {

// Connected-edge-subset alternating sum over subsets of the position set.
// With T(X) = 1 iff H[X] is edgeless, and v the lowest position of S:
//   C(S) = T(S) - sum_{W properly contains v, W subset S} C(W) T(S \ W).
// Values fit in int64 for |positions| <= 10.
long long connected_signed_sum(const std::vector<std::uint16_t>& adj, std::uint16_t full) {
    const int p = __builtin_popcount(full);
    std::vector<long long> c(static_cast<std::size_t>(1) << p, 0);
    // Map compressed submask bits -> original position indices.
    std::vector<int> pos;
    for (int i = 0; i < 16; ++i)
        if (full & (1u << i)) pos.push_back(i);

    auto edgeless = [&](std::uint16_t orig_mask) {
        std::uint16_t m = orig_mask;
        while (m) {
            int v = __builtin_ctz(m);
            m &= static_cast<std::uint16_t>(m - 1);
            if (adj[static_cast<std::size_t>(v)] & orig_mask & ~(1u << v)) return false;
        }
        return true;
    };

    auto to_orig = [&](std::uint32_t comp) {
        std::uint16_t m = 0;
        for (int i = 0; i < p; ++i)
            if (comp & (1u << i)) m |= static_cast<std::uint16_t>(1u << pos[static_cast<std::size_t>(i)]);
        return m;
    };

    for (std::uint32_t s = 1; s < (1u << p); ++s) {
        const std::uint16_t orig_s = to_orig(s);
        long long acc = edgeless(orig_s) ? 1 : 0;
        const std::uint32_t v = s & (~s + 1); // lowest bit
        const std::uint32_t rest = s & ~v;
        // Proper subsets W of s containing v: iterate subsets u of rest, W = u | v, u != rest.
        for (std::uint32_t u = rest; u != 0;) {
            u = (u - 1) & rest; // skips u == rest, includes u == 0; excludes W == s
            const std::uint32_t w = u | v;
            const std::uint32_t comp = s & ~w;
            if (edgeless(to_orig(comp))) acc -= c[w];
            if (u == 0) break;
        }
        c[s] = acc;
    }
    return c[(1u << p) - 1];
}

} // namespace

mpq_class ursell(const std::vector<std::uint16_t>& adj) {
    const int p = static_cast<int>(adj.size());
    if (p <= 0) throw precondition_error("ursell needs at least one vertex");
    if (p > 10) throw precondition_error("ursell guarded at 10 vertices");
    if (p == 1) return {1};
    const std::uint16_t full = static_cast<std::uint16_t>((1u << p) - 1);
    long long num = connected_signed_sum(adj, full);
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(p));
    mpz_class numz;
    mpz_set_si(numz.get_mpz_t(), static_cast<long>(num));
    mpq_class q(numz, fact);
    q.canonicalize();
    return q;
}

namespace {

struct PhiCache {
    std::unordered_map<std::uint64_t, mpq_class> memo;

    // Position graph of (support-adjacency pattern, multiplicities): positions
    // for copy c of support vertex i; equal copies adjacent, copies of
    // adjacent support vertices adjacent.
    mpq_class phi(const std::vector<int>& mult, const std::vector<std::uint16_t>& support_adj) {
        int p = 0;
        for (int m : mult) p += m;
        std::vector<std::uint16_t> adj(static_cast<std::size_t>(p), 0);
        // Key = position count in the top bits plus the 45-bit edge mask;
        // graphs of different sizes share low bits otherwise.
        std::uint64_t key = static_cast<std::uint64_t>(p) << 50;
        int bit = 0;
        std::vector<int> owner(static_cast<std::size_t>(p));
        {
            int idx = 0;
            for (std::size_t i = 0; i < mult.size(); ++i)
                for (int c = 0; c < mult[i]; ++c) owner[static_cast<std::size_t>(idx++)] = static_cast<int>(i);
        }
        for (int a = 0; a < p; ++a)
            for (int b = a + 1; b < p; ++b) {
                bool e = owner[static_cast<std::size_t>(a)] == owner[static_cast<std::size_t>(b)] ||
                         (support_adj[static_cast<std::size_t>(owner[static_cast<std::size_t>(a)])] &
                          (1u << owner[static_cast<std::size_t>(b)]));
                if (e) {
                    adj[static_cast<std::size_t>(a)] |= static_cast<std::uint16_t>(1u << b);
                    adj[static_cast<std::size_t>(b)] |= static_cast<std::uint16_t>(1u << a);
                    key |= 1ULL << bit;
                }
                ++bit;
            }
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        mpq_class v = ursell(adj);
        memo.emplace(key, v);
        return v;
    }
};

// Enumerates connected vertex sets with a fixed root (the set minimum) via
// candidate lists with per-level bans, then multiplicity compositions.
class RootEnumerator {
public:
    RootEnumerator(const Graph& g, int max_size) : g_(g), cap_(max_size) {
        state_.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    }

    void run(int root, const std::function<void(const Cluster&)>& visit) {
        visit_ = &visit;
        root_ = root;
        support_.clear();
        support_.push_back(root);
        state_[static_cast<std::size_t>(root)] = 2; // in set
    std::vector<int> cand;
        for (int w : g_.neighbors(root))
            if (w > root) {
                cand.push_back(w);
                state_[static_cast<std::size_t>(w)] = 1; // known candidate
            }
        extend(cand);
        state_[static_cast<std::size_t>(root)] = 0;
        for (int w : g_.neighbors(root))
            if (w > root) state_[static_cast<std::size_t>(w)] = 0;
    }

private:
    const Graph& g_;
    int cap_;
    int root_ = 0;
    std::vector<int> support_;
    std::vector<char> state_; // 0 free, 1 candidate/banned bookkeeping, 2 in set
    const std::function<void(const Cluster&)>* visit_ = nullptr;

    void emit_compositions() {
        const int s = static_cast<int>(support_.size());
        Cluster cl;
        cl.support = support_;
        std::sort(cl.support.begin(), cl.support.end());
        cl.multiplicity.assign(static_cast<std::size_t>(s), 1);
        compose(cl, 0, 0);
    }

    // Assign multiplicities >= 1 per support vertex, total <= cap_.
    void compose(Cluster& cl, int idx, int assigned) {
        const int s = static_cast<int>(cl.support.size());
        if (idx == s) {
            cl.size = assigned;
            mpz_class fact;
            mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(assigned));
            for (int m : cl.multiplicity) {
                mpz_class mf;
                mpz_fac_ui(mf.get_mpz_t(), static_cast<unsigned long>(m));
                mpz_divexact(fact.get_mpz_t(), fact.get_mpz_t(), mf.get_mpz_t());
            }
            cl.ordering_count = fact;
            (*visit_)(cl);
            return;
        }
        const int reserved = s - idx - 1; // later vertices need >= 1 each
        for (int m = 1; assigned + m + reserved <= cap_; ++m) {
            cl.multiplicity[static_cast<std::size_t>(idx)] = m;
            compose(cl, idx + 1, assigned + m);
        }
        cl.multiplicity[static_cast<std::size_t>(idx)] = 1;
    }

    void extend(std::vector<int>& cand) {
        emit_compositions();
        if (static_cast<int>(support_.size()) >= cap_) return;
        std::vector<int> banned_here;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            int v = cand[i];
            if (state_[static_cast<std::size_t>(v)] == 3) continue; // banned by earlier sibling
            support_.push_back(v);
            state_[static_cast<std::size_t>(v)] = 2;
            std::vector<int> next;
            for (std::size_t j = i + 1; j < cand.size(); ++j)
                if (state_[static_cast<std::size_t>(cand[j])] == 1) next.push_back(cand[j]);
            std::vector<int> fresh;
            for (int w : g_.neighbors(v))
                if (w > root_ && state_[static_cast<std::size_t>(w)] == 0) {
                    fresh.push_back(w);
                    state_[static_cast<std::size_t>(w)] = 1;
                    next.push_back(w);
                }
            extend(next);
            for (int w : fresh) state_[static_cast<std::size_t>(w)] = 0;
            support_.pop_back();
            state_[static_cast<std::size_t>(v)] = 3; // ban for later siblings
            banned_here.push_back(v);
        }
        for (int v : banned_here) state_[static_cast<std::size_t>(v)] = 1;
    }
};

} // namespace

void enumerate_clusters(const Graph& g, int max_size,
                        const std::function<void(const Cluster&)>& visit) {
    if (max_size > kClusterGuardDefault)
        throw precondition_error("cluster enumeration guarded at size " +
                                 std::to_string(kClusterGuardDefault));
    if (max_size < 1) return;
    RootEnumerator e(g, max_size);
    for (int r = 0; r < g.vertex_count(); ++r) e.run(r, visit);
}

std::vector<mpq_class> log_z_cluster_coefficients(const Graph& g, int t, par::Mode mode) {
    if (t > kClusterGuardDefault)
        throw precondition_error("cluster coefficients guarded at order " +
                                 std::to_string(kClusterGuardDefault));
    using Orders = std::vector<mpq_class>;
    Orders init(static_cast<std::size_t>(std::max(t, 0)), mpq_class(0));
    if (t < 1 || g.vertex_count() == 0) return init;

    auto map_block = [&](std::size_t lo, std::size_t hi, std::size_t) {
        Orders acc(static_cast<std::size_t>(t), mpq_class(0));
        PhiCache cache;
        RootEnumerator e(g, t);
        for (std::size_t r = lo; r < hi; ++r) {
            e.run(static_cast<int>(r), [&](const Cluster& cl) {
                std::vector<std::uint16_t> sadj(cl.support.size(), 0);
                for (std::size_t i = 0; i < cl.support.size(); ++i)
                    for (std::size_t j = i + 1; j < cl.support.size(); ++j)
                        if (g.has_edge(cl.support[i], cl.support[j])) {
                            sadj[i] |= static_cast<std::uint16_t>(1u << j);
                            sadj[j] |= static_cast<std::uint16_t>(1u << i);
                        }
                mpq_class phi = cache.phi(cl.multiplicity, sadj);
                if (phi == 0) return;
                acc[static_cast<std::size_t>(cl.size - 1)] += mpq_class(cl.ordering_count) * phi;
            });
        }
        return acc;
    };
    auto reduce = [t](Orders a, const Orders& b) {
        for (int j = 0; j < t; ++j) a[static_cast<std::size_t>(j)] += b[static_cast<std::size_t>(j)];
        return a;
    };
    return par::map_reduce_blocks<Orders>(static_cast<std::size_t>(g.vertex_count()), 1, init,
                                          map_block, reduce, mode);
}

namespace {

// The per-order aggregates are pure in (graph, t); the truncation entry points
// cache them so fugacity searches do not re-enumerate clusters per probe.
std::mutex g_coeff_cache_mutex;
std::unordered_map<std::uint64_t, std::shared_ptr<const std::vector<mpq_class>>> g_coeff_cache;

std::uint64_t cluster_graph_signature(const Graph& g) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    mix(static_cast<std::uint64_t>(g.vertex_count()));
    for (auto [u, v] : g.edges()) {
        mix(static_cast<std::uint64_t>(u));
        mix(static_cast<std::uint64_t>(v));
    }
    return h;
}

std::shared_ptr<const std::vector<mpq_class>> cached_coefficients(const Graph& g, int t,
                                                                  par::Mode mode) {
    const std::uint64_t sig =
        cluster_graph_signature(g) * 1000003ULL + static_cast<std::uint64_t>(t);
    {
        std::lock_guard<std::mutex> lock(g_coeff_cache_mutex);
        auto it = g_coeff_cache.find(sig);
        if (it != g_coeff_cache.end()) return it->second;
    }
    auto value =
        std::make_shared<const std::vector<mpq_class>>(log_z_cluster_coefficients(g, t, mode));
    std::lock_guard<std::mutex> lock(g_coeff_cache_mutex);
    auto [it, inserted] = g_coeff_cache.emplace(sig, value);
    return it->second;
}

} // namespace

double kp_tail(double lambda, int max_degree, long long n, int t, int k) {
    const double x = lambda * std::exp(1.0) * (max_degree + 1);
    if (x >= 1.0) return std::numeric_limits<double>::infinity();
    long double acc = 0.0L;
    long double xj = std::pow(static_cast<long double>(x), t);
    for (long long j = t; j < t + 400000; ++j) {
        long double term = std::pow(static_cast<long double>(j), k) * xj;
        acc += term;
        xj *= static_cast<long double>(x);
        if (term < 1e-320L && j > t + 4) break;
    }
    return static_cast<double>(static_cast<long double>(n) * acc);
}

namespace {

ClusterSum weighted_sum(const Graph& g, double lambda, int k, int t, par::Mode mode) {
    auto coeffs_ptr = cached_coefficients(g, t, mode);
    const auto& coeffs = *coeffs_ptr;
    ClusterSum s;
    s.truncation_order = t;
    const double x = lambda * std::exp(1.0) * (g.max_degree() + 1);
    s.certified = x < 1.0;
    double cum = 0.0;
    for (int j = 1; j <= t; ++j) {
        OrderContribution oc;
        oc.order = j;
        double cj = mpq_get_d(coeffs[static_cast<std::size_t>(j - 1)].get_mpq_t());
        oc.contribution = std::pow(static_cast<double>(j), k) * cj * std::pow(lambda, j);
        cum += oc.contribution;
        oc.cumulative = cum;
        oc.kp_bound = g.vertex_count() * std::pow(x, j);
        s.per_order.push_back(oc);
    }
    s.value = cum;
    return s;
}

} // namespace

ClusterSum truncated_log_Z(const Graph& g, double lambda, int t, par::Mode mode) {
    if (lambda <= 0) throw precondition_error("truncated_log_Z needs lambda > 0");
    ClusterSum s = weighted_sum(g, lambda, 0, t, mode);
    const double x = lambda * std::exp(1.0) * (g.max_degree() + 1);
    s.kp_tail_bound = s.certified ? g.vertex_count() * std::pow(x, t)
                                  : std::numeric_limits<double>::infinity();
    return s;
}

ClusterSum truncated_cumulant(const Graph& g, double lambda, int k, int t, par::Mode mode) {
    if (lambda <= 0) throw precondition_error("truncated_cumulant needs lambda > 0");
    if (k < 1) throw precondition_error("cumulant order must be >= 1");
    ClusterSum s = weighted_sum(g, lambda, k, t, mode);
    s.kp_tail_bound = s.certified ? kp_tail(lambda, g.max_degree(), g.vertex_count(), t, k)
                                  : std::numeric_limits<double>::infinity();
    return s;
}

int select_truncation_order(double lambda, int max_degree, double eps, long long n, int k) {
    const double x = lambda * std::exp(1.0) * (max_degree + 1);
    if (x >= 1.0)
        throw certification_error("cluster expansion not certified: lambda e (Delta+1) = " +
                                  std::to_string(x) + " >= 1");
    const double target = eps * lambda * static_cast<double>(n);
    for (int t = 1; t <= 100000; ++t) {
        if (kp_tail(lambda, max_degree, n, t, k) <= target) return t;
    }
    throw certification_error("no feasible truncation order below 100000");
}

} // namespace hardcount
