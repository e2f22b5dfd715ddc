#include "hardcount/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hardcount {

namespace {

// Branching recursion state: alive vertices tracked in a bitmask (guard <= 40
// keeps everything in one uint64_t).
struct Brancher {
    const Graph* g;
    std::vector<std::uint64_t> nbr_mask;

    std::vector<mpz_class> run(std::uint64_t alive) const {
        // Pick an alive vertex of maximum remaining degree.
        int best = -1, best_deg = -1;
        std::uint64_t rest = alive;
        while (rest) {
            int v = __builtin_ctzll(rest);
            rest &= rest - 1;
            int deg = __builtin_popcountll(nbr_mask[static_cast<std::size_t>(v)] & alive);
            if (deg > best_deg) {
                best_deg = deg;
                best = v;
            }
        }
        if (best_deg <= 0) {
            // Edgeless remainder: Z = (1 + lambda)^count.
            int count = __builtin_popcountll(alive);
            std::vector<mpz_class> out(static_cast<std::size_t>(count) + 1);
            for (int k = 0; k <= count; ++k) out[static_cast<std::size_t>(k)] = binomial(count, k);
            return out;
        }
        std::uint64_t vbit = 1ULL << best;
        auto without = run(alive & ~vbit);
        auto closed = run(alive & ~(nbr_mask[static_cast<std::size_t>(best)] | vbit));
        std::vector<mpz_class> out(std::max(without.size(), closed.size() + 1));
        for (std::size_t k = 0; k < without.size(); ++k) out[k] += without[k];
        for (std::size_t k = 0; k < closed.size(); ++k) out[k + 1] += closed[k];
        while (out.size() > 1 && out.back() == 0) out.pop_back();
        return out;
    }
};

} // namespace

IntPolynomial independence_polynomial(const Graph& g, int guard) {
    const int n = g.vertex_count();
    if (n > guard || n > 63)
        throw precondition_error("exact independence polynomial guarded at n <= " +
                                 std::to_string(std::min(guard, 63)) + ", got n = " + std::to_string(n));
    Brancher b;
    b.g = &g;
    b.nbr_mask.assign(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        for (int w : g.neighbors(v)) b.nbr_mask[static_cast<std::size_t>(v)] |= 1ULL << w;
    std::uint64_t alive = n == 0 ? 0 : (n == 63 ? ~0ULL >> 1 : (1ULL << n) - 1);
    IntPolynomial p;
    p.coeffs = b.run(alive);
    return p;
}

IntPolynomial matching_counts(const Graph& g, int guard) {
    if (g.edge_count() == 0) {
        IntPolynomial p;
        p.coeffs = {mpz_class(1)};
        return p;
    }
    return independence_polynomial(line_graph(g), guard);
}

IntPolynomial path_polynomial_transfer(int n) {
    if (n < 0) throw precondition_error("path length must be nonnegative");
    // i_k(P_j) = i_k(P_{j-1}) + i_{k-1}(P_{j-2}); keep the last two rows.
    std::vector<mpz_class> prev2 = {mpz_class(1)};            // P_0 (empty graph)
    std::vector<mpz_class> prev1 = {mpz_class(1), mpz_class(1)}; // P_1
    if (n == 0) return {prev2};
    if (n == 1) return {prev1};
    for (int j = 2; j <= n; ++j) {
        std::vector<mpz_class> cur(std::max(prev1.size(), prev2.size() + 1));
        for (std::size_t k = 0; k < prev1.size(); ++k) cur[k] += prev1[k];
        for (std::size_t k = 0; k < prev2.size(); ++k) cur[k + 1] += prev2[k];
        while (cur.size() > 1 && cur.back() == 0) cur.pop_back();
        prev2 = std::move(prev1);
        prev1 = std::move(cur);
    }
    return {prev1};
}

IntPolynomial cycle_polynomial_transfer(int n) {
    if (n < 3) throw precondition_error("cycle needs n >= 3");
    // Condition on vertex 0: unoccupied -> P_{n-1}; occupied -> P_{n-3} plus one.
    auto a = path_polynomial_transfer(n - 1);
    auto b = path_polynomial_transfer(n - 3);
    std::vector<mpz_class> out(std::max(a.coeffs.size(), b.coeffs.size() + 1));
    for (std::size_t k = 0; k < a.coeffs.size(); ++k) out[k] += a.coeffs[k];
    for (std::size_t k = 0; k < b.coeffs.size(); ++k) out[k + 1] += b.coeffs[k];
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return {out};
}

IntPolynomial path_polynomial_closed(int n) {
    if (n < 0) throw precondition_error("path length must be nonnegative");
    IntPolynomial p;
    for (int k = 0;; ++k) {
        mpz_class c = binomial(n - k + 1, k);
        if (c == 0 && k > 0) break;
        p.coeffs.push_back(c);
        if (n == 0) break;
    }
    return p;
}

IntPolynomial cycle_polynomial_closed(int n) {
    if (n < 3) throw precondition_error("cycle needs n >= 3");
    IntPolynomial p;
    p.coeffs.push_back(1);
    for (int k = 1; 2 * k <= n; ++k) {
        // n/(n-k) * C(n-k, k), always an integer.
        mpz_class c = binomial(n - k, k) * n;
        mpz_class q;
        mpz_divexact_ui(q.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(n - k));
        p.coeffs.push_back(q);
    }
    return p;
}

cld evaluate_Z(const IntPolynomial& p, cld lambda) { return evaluate_poly(p, lambda); }

SizeDistribution size_distribution(const IntPolynomial& p, double lambda) {
    if (lambda <= 0) throw precondition_error("size distribution needs lambda > 0");
    SizeDistribution d;
    d.lambda = lambda;
    const std::size_t m = p.coeffs.size();
    const long double ll = std::log(static_cast<long double>(lambda));
    std::vector<long double> lg(m);
    long double mx = -std::numeric_limits<long double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
        long e2 = 0;
        double mant = mpz_get_d_2exp(&e2, p.coeffs[k].get_mpz_t());
        lg[k] = mant == 0.0 ? -std::numeric_limits<long double>::infinity()
                            : std::log(static_cast<long double>(mant)) +
                                  static_cast<long double>(e2) * 0.6931471805599453094L +
                                  static_cast<long double>(k) * ll;
        mx = std::max(mx, lg[k]);
    }
    long double z = 0.0L;
    for (long double t : lg) z += std::exp(t - mx);
    d.probs.resize(m);
    long double mean = 0, m2 = 0, m3 = 0, m4 = 0;
    for (std::size_t k = 0; k < m; ++k) {
        long double pk = std::exp(lg[k] - mx) / z;
        d.probs[k] = static_cast<double>(pk);
        mean += pk * static_cast<long double>(k);
    }
    for (std::size_t k = 0; k < m; ++k) {
        long double c = static_cast<long double>(k) - mean;
        long double pk = static_cast<long double>(d.probs[k]);
        m2 += pk * c * c;
        m3 += pk * c * c * c;
        m4 += pk * c * c * c * c;
    }
    d.mean = static_cast<double>(mean);
    d.variance = static_cast<double>(m2);
    d.kappa3 = static_cast<double>(m3);
    d.kappa4 = static_cast<double>(m4 - 3.0L * m2 * m2);
    return d;
}

std::complex<double> characteristic_function(const IntPolynomial& p, double lambda, double t) {
    if (lambda <= 0) throw precondition_error("characteristic function needs lambda > 0");
    // Z(lambda e^{it}) / Z(lambda), both via log-scaled Horner to keep the
    // ratio finite for large n.
    const long double logz = log_evaluate_poly(p, static_cast<long double>(lambda));
    // Evaluate sum_k exp(lg_k - logz) e^{itk} directly.
    const long double ll = std::log(static_cast<long double>(lambda));
    std::complex<long double> acc(0.0L, 0.0L);
    for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
        long e2 = 0;
        double mant = mpz_get_d_2exp(&e2, p.coeffs[k].get_mpz_t());
        if (mant == 0.0) continue;
        long double lg = std::log(static_cast<long double>(mant)) +
                         static_cast<long double>(e2) * 0.6931471805599453094L +
                         static_cast<long double>(k) * ll - logz;
        long double w = std::exp(lg);
        long double ph = static_cast<long double>(t) * static_cast<long double>(k);
        acc += std::complex<long double>(w * std::cos(ph), w * std::sin(ph));
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

namespace {

// O(V^3) maximum matching with blossom contraction.
class Blossom {
public:
    explicit Blossom(const Graph& g) : g_(g), n_(g.vertex_count()) {
        match_.assign(static_cast<std::size_t>(n_), -1);
        p_.assign(static_cast<std::size_t>(n_), 0);
        base_.assign(static_cast<std::size_t>(n_), 0);
    }

    int run() {
        int res = 0;
        for (int v = 0; v < n_; ++v)
            if (match_[static_cast<std::size_t>(v)] < 0 && augment(v)) ++res;
        return res;
    }

private:
    const Graph& g_;
    int n_;
    std::vector<int> match_, p_, base_;
    std::vector<char> used_, blossom_;

    int lca(int a, int b) {
        std::vector<char> used(static_cast<std::size_t>(n_), 0);
        for (;;) {
            a = base_[static_cast<std::size_t>(a)];
            used[static_cast<std::size_t>(a)] = 1;
            if (match_[static_cast<std::size_t>(a)] < 0) break;
            a = p_[static_cast<std::size_t>(match_[static_cast<std::size_t>(a)])];
        }
        for (;;) {
            b = base_[static_cast<std::size_t>(b)];
            if (used[static_cast<std::size_t>(b)]) return b;
            b = p_[static_cast<std::size_t>(match_[static_cast<std::size_t>(b)])];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base_[static_cast<std::size_t>(v)] != b) {
            blossom_[static_cast<std::size_t>(base_[static_cast<std::size_t>(v)])] = 1;
            blossom_[static_cast<std::size_t>(base_[static_cast<std::size_t>(match_[static_cast<std::size_t>(v)])])] = 1;
            p_[static_cast<std::size_t>(v)] = child;
            child = match_[static_cast<std::size_t>(v)];
            v = p_[static_cast<std::size_t>(match_[static_cast<std::size_t>(v)])];
        }
    }

    bool augment(int root) {
        used_.assign(static_cast<std::size_t>(n_), 0);
        std::fill(p_.begin(), p_.end(), -1);
        for (int i = 0; i < n_; ++i) base_[static_cast<std::size_t>(i)] = i;
        std::vector<int> q{root};
        used_[static_cast<std::size_t>(root)] = 1;
        for (std::size_t qi = 0; qi < q.size(); ++qi) {
            int v = q[qi];
            for (int to : g_.neighbors(v)) {
                if (base_[static_cast<std::size_t>(v)] == base_[static_cast<std::size_t>(to)] ||
                    match_[static_cast<std::size_t>(v)] == to)
                    continue;
                if (to == root ||
                    (match_[static_cast<std::size_t>(to)] >= 0 &&
                     p_[static_cast<std::size_t>(match_[static_cast<std::size_t>(to)])] >= 0)) {
                    int curbase = lca(v, to);
                    blossom_.assign(static_cast<std::size_t>(n_), 0);
                    mark_path(v, curbase, to);
                    mark_path(to, curbase, v);
                    for (int i = 0; i < n_; ++i)
                        if (blossom_[static_cast<std::size_t>(base_[static_cast<std::size_t>(i)])]) {
                            base_[static_cast<std::size_t>(i)] = curbase;
                            if (!used_[static_cast<std::size_t>(i)]) {
                                used_[static_cast<std::size_t>(i)] = 1;
                                q.push_back(i);
                            }
                        }
                } else if (p_[static_cast<std::size_t>(to)] < 0) {
                    p_[static_cast<std::size_t>(to)] = v;
                    if (match_[static_cast<std::size_t>(to)] < 0) {
                        // Augmenting path found; flip it.
                        int u = to;
                        while (u >= 0) {
                            int pv = p_[static_cast<std::size_t>(u)];
                            int ppv = match_[static_cast<std::size_t>(pv)];
                            match_[static_cast<std::size_t>(u)] = pv;
                            match_[static_cast<std::size_t>(pv)] = u;
                            u = ppv;
                        }
                        return true;
                    }
                    int m = match_[static_cast<std::size_t>(to)];
                    if (!used_[static_cast<std::size_t>(m)]) {
                        used_[static_cast<std::size_t>(m)] = 1;
                        q.push_back(m);
                    }
                }
            }
        }
        return false;
    }
};

} // namespace

int max_matching(const Graph& g) { return Blossom(g).run(); }

} // namespace hardcount
