#include <doctest.h>

#include <cmath>
#include <map>

#include "hardcount/exact.hpp"
#include "hardcount/generate.hpp"
#include "hardcount/sampling.hpp"
#include "oracles.hpp"

using namespace hardcount;

namespace {

// Exact Glauber transition matrix over all independent sets; checks that the
// hard-core vector is stationary.
double glauber_stationarity_gap(const Graph& g, double lambda) {
    auto sets = [&] {
        std::vector<std::uint32_t> masks;
        for (std::uint32_t m = 0; m < (1u << g.vertex_count()); ++m)
            if (oracles::mask_independent(g, m)) masks.push_back(m);
        return masks;
    }();
    std::map<std::uint32_t, std::size_t> index;
    for (std::size_t i = 0; i < sets.size(); ++i) index[sets[i]] = i;
    const int n = g.vertex_count();
    const double p_occ = lambda / (1 + lambda);
    std::vector<std::vector<double>> P(sets.size(), std::vector<double>(sets.size(), 0.0));
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const std::uint32_t m = sets[i];
        for (int v = 0; v < n; ++v) {
            bool blocked = false;
            for (int w : g.neighbors(v))
                if (m >> w & 1u) {
                    blocked = true;
                    break;
                }
            std::uint32_t m_off = m & ~(1u << v);
            if (blocked) {
                P[i][index[m_off]] += 1.0 / n;
            } else {
                P[i][index[m_off | (1u << v)]] += p_occ / n;
                P[i][index[m_off]] += (1 - p_occ) / n;
            }
        }
    }
    // pi proportional to lambda^{|m|}
    std::vector<double> pi(sets.size());
    double z = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        pi[i] = std::pow(lambda, __builtin_popcount(sets[i]));
        z += pi[i];
    }
    for (double& x : pi) x /= z;
    double gap = 0;
    for (std::size_t j = 0; j < sets.size(); ++j) {
        double acc = 0;
        for (std::size_t i = 0; i < sets.size(); ++i) acc += pi[i] * P[i][j];
        gap = std::max(gap, std::abs(acc - pi[j]));
    }
    return gap;
}

// Exact down-up transition matrix on I_k; checks that uniform is stationary.
double downup_uniform_gap(const Graph& g, int k) {
    auto sets = oracles::independent_sets_of_size(g, k);
    if (sets.size() < 2) return 0.0;
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < sets.size(); ++i) index[sets[i]] = i;
    const int n = g.vertex_count();
    std::vector<std::vector<double>> P(sets.size(), std::vector<double>(sets.size(), 0.0));
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto& s = sets[i];
        for (int v : s)
            for (int w = 0; w < n; ++w) {
                std::vector<int> next;
                for (int u : s)
                    if (u != v) next.push_back(u);
                next.push_back(w);
                std::sort(next.begin(), next.end());
                bool ok = std::adjacent_find(next.begin(), next.end()) == next.end();
                if (ok)
                    for (std::size_t a = 0; a < next.size() && ok; ++a)
                        for (std::size_t b = a + 1; b < next.size(); ++b)
                            if (g.has_edge(next[a], next[b])) {
                                ok = false;
                                break;
                            }
                const double w_prob = 1.0 / (static_cast<double>(s.size()) * n);
                if (ok) P[i][index[next]] += w_prob;
                else P[i][i] += w_prob;
            }
    }
    double gap = 0;
    const double u = 1.0 / static_cast<double>(sets.size());
    for (std::size_t j = 0; j < sets.size(); ++j) {
        double acc = 0;
        for (std::size_t i = 0; i < sets.size(); ++i) acc += u * P[i][j];
        gap = std::max(gap, std::abs(acc - u));
    }
    return gap;
}

} // namespace

TEST_CASE("glauber stationarity on all graphs with n <= 5") {
    for (int n = 2; n <= 5; ++n) {
        const int maxe = n * (n - 1) / 2;
        for (std::uint32_t mask = 0; mask < (1u << maxe); ++mask) {
            std::vector<std::pair<int, int>> edges;
            int idx = 0;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b, ++idx)
                    if (mask >> idx & 1u) edges.emplace_back(a, b);
            Graph g = Graph::from_edges(n, edges);
            CHECK(glauber_stationarity_gap(g, 0.7) <= 1e-12);
        }
        // Sampled thinning keeps runtime sane; full sweep happens at n <= 4.
        if (n >= 5) break;
    }
    CHECK(glauber_stationarity_gap(make_cycle(6), 1.3) <= 1e-12);
}

TEST_CASE("down-up uniform stationarity") {
    for (const Graph& g : {make_cycle(6), make_path(6), make_grid(2, 3)}) {
        for (int k = 1; k <= 3; ++k) CHECK(downup_uniform_gap(g, k) <= 1e-12);
    }
}

TEST_CASE("glauber empirical law on K2") {
    Graph k2 = make_complete(2);
    Rng rng(42);
    HardCoreChain chain(k2, 1.0);
    chain.run(2000, rng);
    std::map<std::vector<int>, long long> hist;
    const long long samples = 60000;
    for (long long i = 0; i < samples; ++i) {
        chain.run(8, rng);
        hist[chain.current_set()] += 1;
    }
    // Exact: P(empty) = P({0}) = P({1}) = 1/3.
    for (const auto& [set, count] : hist)
        CHECK(std::abs(count / static_cast<double>(samples) - 1.0 / 3) < 0.02);
    CHECK(hist.size() == 3);
}

TEST_CASE("glauber empirical TV on small fixtures") {
    for (const Graph& g : {make_cycle(5), make_path(6)}) {
        const double lambda = 0.9;
        auto poly = independence_polynomial(g);
        // Exact law over sets.
        std::map<std::vector<int>, double> exact;
        double z = 0;
        for (std::uint32_t m = 0; m < (1u << g.vertex_count()); ++m) {
            if (!oracles::mask_independent(g, m)) continue;
            z += std::pow(lambda, __builtin_popcount(m));
        }
        for (std::uint32_t m = 0; m < (1u << g.vertex_count()); ++m) {
            if (!oracles::mask_independent(g, m)) continue;
            std::vector<int> s;
            for (int v = 0; v < g.vertex_count(); ++v)
                if (m >> v & 1u) s.push_back(v);
            exact[s] = std::pow(lambda, s.size()) / z;
        }
        Rng rng(7);
        HardCoreChain chain(g, lambda);
        chain.run(100000, rng);
        std::map<std::vector<int>, long long> hist;
        const long long samples = 100000;
        for (long long i = 0; i < samples; ++i) {
            chain.run(g.vertex_count(), rng);
            hist[chain.current_set()] += 1;
        }
        double tv = 0;
        for (const auto& [set, p] : exact) {
            auto it = hist.find(set);
            const double emp = it == hist.end() ? 0.0 : it->second / static_cast<double>(samples);
            tv += std::abs(emp - p);
        }
        CHECK(tv / 2 <= 0.02);
    }
}

TEST_CASE("down-up walk empirical uniformity on I_2(C5)") {
    Graph c5 = make_cycle(5);
    auto sets = oracles::independent_sets_of_size(c5, 2);
    REQUIRE(sets.size() == 5);
    Rng rng(3);
    DownUpChain chain(c5, greedy_independent_set(c5, 2));
    chain.run(3000, rng);
    std::map<std::vector<int>, long long> hist;
    const long long steps = 100000;
    for (long long i = 0; i < steps; ++i) {
        chain.step(rng);
        hist[chain.sorted_members()] += 1;
    }
    CHECK(oracles::tv_to_uniform(hist, steps, sets.size()) <= 0.02);
}

TEST_CASE("randomized fugacity finder") {
    // Small-k branch is deterministic when lambda = k/n sits in the cluster
    // regime.
    Graph p100 = make_path(100);
    Rng rng(1);
    CHECK(find_fugacity_randomized(p100, 3, 0.05, rng) == doctest::Approx(3.0 / 100));
    Graph c20 = make_cycle(20);

    // Empty graph: closed-form mean check.
    Graph empty = Graph::from_edges(36, {});
    Rng rng2(2);
    const double lam = find_fugacity_randomized(empty, 9, 0.05, rng2);
    const double mean = 36 * lam / (1 + lam);
    const double sigma = std::sqrt(36 * lam / ((1 + lam) * (1 + lam)));
    CHECK(std::abs(mean - 9) <= sigma + 0.5);

    CHECK_THROWS_AS(find_fugacity_randomized(c20, 12, 0.05, rng), precondition_error);
}

TEST_CASE("fugacity finder bracket holds on C20 k=5 across seeds") {
    Graph c20 = make_cycle(20);
    auto poly = independence_polynomial(c20);
    int pass = 0;
    const int trials = 100;
    for (int s = 0; s < trials; ++s) {
        Rng rng(static_cast<std::uint64_t>(s) + 1000);
        const double lam = find_fugacity_randomized(c20, 5, 0.05, rng);
        auto dist = size_distribution(poly, lam);
        if (std::abs(dist.mean - 5) <= std::sqrt(dist.variance)) ++pass;
    }
    CHECK(pass >= 95);
}

TEST_CASE("rejection sampler") {
    Graph c12 = make_cycle(12);
    Rng rng(5);
    const double lambda = 0.7;
    auto r = rejection_sample_k(c12, lambda, 3, rng, 4000);
    REQUIRE(r.set.has_value());
    CHECK(r.set->size() == 3);

    // Success frequency tracks the exact P[Y=3].
    auto poly = independence_polynomial(c12);
    auto dist = size_distribution(poly, lambda);
    long long hits = 0;
    const long long tries = 4000;
    Rng rng2(6);
    for (long long i = 0; i < tries; ++i) {
        HardCoreChain chain(c12, lambda);
        chain.run(default_burn_in(12, 0.05), rng2);
        if (chain.size() == 3) ++hits;
    }
    CHECK(std::abs(hits / static_cast<double>(tries) - dist.probs[3]) <= 0.03);
}

TEST_CASE("fast sampler: structural invariants on C12 k=3") {
    Graph c12 = make_cycle(12);
    Rng rng(11);
    FastSampler sampler(c12, 3, 0.05, rng, {});
    CHECK(sampler.separated().size() == 3);

    // Conditional tables sum to one for random core states.
    Rng rng2(12);
    HardCoreChain chain(c12, sampler.lambda());
    chain.run(5000, rng2);
    std::vector<char> occ_T(12, 0);
    for (int v : sampler.core())
        occ_T[static_cast<std::size_t>(v)] = chain.occupied()[static_cast<std::size_t>(v)];
    for (int b = 0; b < static_cast<int>(sampler.separated().size()); ++b) {
        auto table = sampler.block_table(b, occ_T);
        double sum = 0;
        for (double p : table.probs) sum += p;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(table.empty_index >= 0);
        CHECK(table.v_only_index >= 0);
        // q > 0 structurally: both the empty and the {v} block states exist.
        CHECK(table.probs[static_cast<std::size_t>(table.empty_index)] > 0);
        CHECK(table.probs[static_cast<std::size_t>(table.v_only_index)] > 0);
    }

    auto s = sampler.sample(rng);
    CHECK(s.size() == 3);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) CHECK(!c12.has_edge(s[i], s[j]));
}

TEST_CASE("mod-p flattening on C12 via exact conditional convolution") {
    Graph c12 = make_cycle(12);
    Rng rng(21);
    FastSampler sampler(c12, 3, 0.05, rng, {});
    const int p = 2; // ceil(sqrt(12 / log(20))) = 2
    Rng rng2(22);
    HardCoreChain chain(c12, sampler.lambda());
    chain.run(8000, rng2);
    std::vector<char> occ_T(12, 0);
    int jsz = 0;
    for (int v : sampler.core()) {
        occ_T[static_cast<std::size_t>(v)] = chain.occupied()[static_cast<std::size_t>(v)];
        jsz += occ_T[static_cast<std::size_t>(v)];
    }
    // Exact distribution of Y mod p given J: convolution of per-block sizes.
    std::vector<double> mod(static_cast<std::size_t>(p), 0.0);
    mod[static_cast<std::size_t>(jsz % p)] = 1.0;
    for (int b = 0; b < static_cast<int>(sampler.separated().size()); ++b) {
        auto table = sampler.block_table(b, occ_T);
        std::vector<double> nxt(static_cast<std::size_t>(p), 0.0);
        for (std::size_t i = 0; i < table.masks.size(); ++i) {
            const int c = __builtin_popcount(table.masks[i]);
            for (int r = 0; r < p; ++r)
                nxt[static_cast<std::size_t>((r + c) % p)] += mod[static_cast<std::size_t>(r)] * table.probs[i];
        }
        mod = nxt;
    }
    for (int r = 0; r < p; ++r) CHECK(std::abs(mod[static_cast<std::size_t>(r)] - 1.0 / p) <= 0.02);
}

TEST_CASE("hypergeometric sub-step: uniform k'-subsets (chi-square)") {
    // The subset selection code path: partial Fisher-Yates over a 6-element
    // pool, k' = 3; chi-square over the 20 outcomes.
    Rng rng(33);
    std::map<std::vector<int>, long long> hist;
    const long long draws = 20000;
    for (long long d = 0; d < draws; ++d) {
        std::vector<int> pool{0, 1, 2, 3, 4, 5};
        for (int i = 0; i < 3; ++i) {
            std::size_t j = i + rng.uniform_index(pool.size() - static_cast<std::size_t>(i));
            std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        }
        std::vector<int> pick(pool.begin(), pool.begin() + 3);
        std::sort(pick.begin(), pick.end());
        hist[pick] += 1;
    }
    CHECK(hist.size() == 20);
    const double expect = draws / 20.0;
    double chi2 = 0;
    for (const auto& [k, c] : hist) chi2 += (c - expect) * (c - expect) / expect;
    CHECK(chi2 < 43.8); // df = 19, p = 0.001
}

TEST_CASE("fpras on C12 k=2") {
    Graph c12 = make_cycle(12);
    Rng rng(17);
    auto r = fpras_count(c12, 2, 0.1, rng);
    CHECK(std::abs(r.log_value - std::log(54.0)) <= 0.1);
}

TEST_CASE("fpras small-k branch on a long path") {
    Graph p200 = make_path(200);
    Rng rng(19);
    auto r = fpras_count(p200, 4, 0.1, rng);
    CHECK(r.branch == "subsample");
    mpz_class truth = binomial(197, 4);
    long e2 = 0;
    double mant = mpz_get_d_2exp(&e2, truth.get_mpz_t());
    CHECK(std::abs(r.log_value - (std::log(mant) + e2 * std::log(2.0))) <= 0.1);

    // p_k on an edgeless graph is exactly 1.
    Graph empty = Graph::from_edges(100, {});
    Rng rng2(20);
    auto re = fpras_count(empty, 3, 0.2, rng2);
    CHECK(re.p_hat == 1.0);
}

TEST_CASE("matching sampler validity and symmetry on C4") {
    Graph c4 = make_cycle(4);
    Rng rng(23);
    std::map<std::vector<int>, long long> hist;
    const int draws = 4000;
    for (int i = 0; i < draws; ++i) {
        auto m = sample_matching_k(c4, 2, 0.1, rng);
        REQUIRE(m.size() == 2);
        std::vector<char> used(4, 0);
        for (auto [u, v] : m) {
            CHECK(!used[static_cast<std::size_t>(u)]);
            CHECK(!used[static_cast<std::size_t>(v)]);
            used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = 1;
        }
        std::vector<int> key;
        for (auto [u, v] : m) {
            key.push_back(u);
            key.push_back(v);
        }
        std::sort(key.begin(), key.end());
        (void)key;
        std::vector<int> ids;
        for (auto [u, v] : m) ids.push_back(u * 4 + v);
        std::sort(ids.begin(), ids.end());
        hist[ids] += 1;
    }
    REQUIRE(hist.size() == 2);
    for (const auto& [k, c] : hist)
        CHECK(std::abs(c / static_cast<double>(draws) - 0.5) <= 0.03);
}
