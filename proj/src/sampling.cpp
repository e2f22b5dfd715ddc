#include "hardcount/sampling.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "hardcount/polynomial.hpp"
#include "hardcount/region.hpp"

namespace hardcount {

HardCoreChain::HardCoreChain(const Graph& g, double lambda)
    : g_(g), p_occupy_(lambda / (1.0 + lambda)) {
    if (lambda <= 0) throw precondition_error("glauber chain needs lambda > 0");
    occupied_.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    blocked_.assign(static_cast<std::size_t>(g.vertex_count()), 0);
}

void HardCoreChain::step(Rng& rng) {
    const int v = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(g_.vertex_count())));
    const bool was = occupied_[static_cast<std::size_t>(v)];
    bool now = false;
    if (blocked_[static_cast<std::size_t>(v)] == 0) now = rng.bernoulli(p_occupy_);
    if (was != now) {
        occupied_[static_cast<std::size_t>(v)] = now;
        const int d = now ? 1 : -1;
        for (int w : g_.neighbors(v)) blocked_[static_cast<std::size_t>(w)] += d;
        size_ += d;
        assert(!now || blocked_[static_cast<std::size_t>(v)] == 0);
    }
    ++steps_;
}

void HardCoreChain::run(long long steps, Rng& rng) {
    for (long long i = 0; i < steps; ++i) step(rng);
}

std::vector<int> HardCoreChain::current_set() const {
    std::vector<int> out;
    for (int v = 0; v < g_.vertex_count(); ++v)
        if (occupied_[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

DownUpChain::DownUpChain(const Graph& g, std::vector<int> initial) : g_(g), members_(std::move(initial)) {
    pos_.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    blocked_.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const int v = members_[i];
        if (pos_[static_cast<std::size_t>(v)] >= 0) throw precondition_error("duplicate vertex in initial set");
        pos_[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    for (int v : members_)
        for (int w : g.neighbors(v)) {
            if (pos_[static_cast<std::size_t>(w)] >= 0)
                throw precondition_error("initial set is not independent");
            blocked_[static_cast<std::size_t>(w)] += 1;
        }
}

void DownUpChain::step(Rng& rng) {
    if (members_.empty()) return;
    const int vi = static_cast<int>(rng.uniform_index(members_.size()));
    const int v = members_[static_cast<std::size_t>(vi)];
    const int w = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(g_.vertex_count())));
    if (w == v) return; // I' = I
    if (pos_[static_cast<std::size_t>(w)] >= 0) return; // |I'| < k, reject
    // w must have no occupied neighbor besides possibly v.
    int b = blocked_[static_cast<std::size_t>(w)];
    if (g_.has_edge(v, w)) b -= 1;
    if (b > 0) return;
    // Accept: swap v out, w in.
    for (int u : g_.neighbors(v)) blocked_[static_cast<std::size_t>(u)] -= 1;
    pos_[static_cast<std::size_t>(v)] = -1;
    members_[static_cast<std::size_t>(vi)] = w;
    pos_[static_cast<std::size_t>(w)] = vi;
    for (int u : g_.neighbors(w)) blocked_[static_cast<std::size_t>(u)] += 1;
    assert(blocked_[static_cast<std::size_t>(w)] == 0 || !g_.has_edge(v, w));
}

void DownUpChain::run(long long steps, Rng& rng) {
    for (long long i = 0; i < steps; ++i) step(rng);
}

std::vector<int> DownUpChain::sorted_members() const {
    std::vector<int> out = members_;
    std::sort(out.begin(), out.end());
    return out;
}

long long default_burn_in(int n, double eps) {
    const double e = std::max(eps, 1e-12);
    return static_cast<long long>(std::ceil(10.0 * n * std::log(std::max(2.0, n / e))));
}

std::vector<int> glauber_run(const Graph& g, double lambda, long long steps, Rng& rng) {
    HardCoreChain chain(g, lambda);
    chain.run(steps, rng);
    return chain.current_set();
}

namespace {

// Median of per-run sizes from independent Glauber chains; deterministic in
// (base seed, run count) and independent of thread count.
double median_size_estimate(const Graph& g, double lambda, int runs, long long burn,
                            const Rng& base) {
    std::vector<int> sizes(static_cast<std::size_t>(runs), 0);
    par::for_each_index(static_cast<std::size_t>(runs), [&](std::size_t i) {
        Rng child = base.split(static_cast<std::uint64_t>(i) + 1);
        HardCoreChain chain(g, lambda);
        chain.run(burn, child);
        sizes[i] = chain.size();
    });
    std::sort(sizes.begin(), sizes.end());
    const std::size_t m = sizes.size();
    return m % 2 ? sizes[m / 2] : (sizes[m / 2 - 1] + sizes[m / 2]) / 2.0;
}

int sampler_max_k(const Graph& g, double delta) { return max_valid_k(g, delta); }

} // namespace

double find_fugacity_randomized(const Graph& g, int k, double eps, Rng& rng,
                                const SamplerConfig& cfg) {
    const int n = g.vertex_count();
    const int kmax = sampler_max_k(g, cfg.delta);
    if (k < 1 || k > kmax)
        throw precondition_error("k = " + std::to_string(k) + " outside the valid range 1.." +
                                 std::to_string(kmax));
    // Deterministic small-k choice lambda = k/n: justified by the cluster
    // expansion, so require that regime too.
    if (k <= std::sqrt(static_cast<double>(n)) &&
        (static_cast<double>(k) / n) * std::exp(1.0) * (g.max_degree() + 1) < 0.5)
        return static_cast<double>(k) / n;

    const int runs = cfg.finder_runs > 0
                         ? cfg.finder_runs
                         : static_cast<int>(std::ceil(6.0 * std::log(std::max(2.0, n / eps))));
    const long long burn = static_cast<long long>(cfg.burn_factor *
                                                  n * std::log(std::max(2.0, n / eps)));
    double hi_cap = 1e5;
    if (!g.claw_free_hint() && g.max_degree() >= 3)
        hi_cap = (1.0 - cfg.delta) * mpq_get_d(critical_fugacity(g.max_degree()).get_mpq_t());

    const double grid = 1.0 / (static_cast<double>(n) * n);
    long long lo = std::max<long long>(1, static_cast<long long>(std::pow(n, -1.0 / 3.0) / grid));
    long long hi = lo;
    const long long cap_idx = static_cast<long long>(hi_cap / grid);
    // Common random numbers per grid index keep the probe monotone-friendly.
    const Rng search_base = rng.split(0x667567ULL);
    rng.next_u64();
    auto med = [&](long long t) {
        return median_size_estimate(g, static_cast<double>(t) * grid, runs, burn,
                                    search_base.split(static_cast<std::uint64_t>(t)));
    };
    while (hi < cap_idx && med(hi) < k) hi = std::min(cap_idx, hi * 2);
    if (med(hi) < k - std::sqrt(static_cast<double>(k)))
        throw budget_error("randomized fugacity search exhausted its range");
    while (lo < hi) {
        long long mid = lo + (hi - lo) / 2;
        if (med(mid) >= k) hi = mid;
        else lo = mid + 1;
    }
    return static_cast<double>(lo) * grid;
}

RejectionResult rejection_sample_k(const Graph& g, double lambda, int k, Rng& rng,
                                   long long max_tries, const SamplerConfig& cfg) {
    RejectionResult res;
    const long long burn = default_burn_in(g.vertex_count(), 0.05) *
                           static_cast<long long>(std::max(1.0, cfg.burn_factor / 10.0));
    for (long long t = 0; t < max_tries; ++t) {
        ++res.tries;
        HardCoreChain chain(g, lambda);
        chain.run(burn, rng);
        if (chain.size() == k) {
            res.set = chain.current_set();
            std::sort(res.set->begin(), res.set->end());
            return res;
        }
    }
    return res;
}

FastSampler::FastSampler(const Graph& g, int k, double eps, Rng& rng, const SamplerConfig& cfg)
    : g_(g), k_(k), eps_(eps), cfg_(cfg) {
    const int n = g.vertex_count();
    const int kmax = sampler_max_k(g, cfg.delta);
    if (k < 1 || k > kmax)
        throw precondition_error("k = " + std::to_string(k) + " outside the valid range 1.." +
                                 std::to_string(kmax));
    if (eps <= 0 || eps >= 1) throw precondition_error("eps must lie in (0,1)");

    lambda_ = find_fugacity_randomized(g, k, eps, rng, cfg);
    s_ = separated_set(g);
    in_t_.assign(static_cast<std::size_t>(n), 1);
    for (int v : s_) {
        in_t_[static_cast<std::size_t>(v)] = 0;
        for (int w : g.neighbors(v)) in_t_[static_cast<std::size_t>(w)] = 0;
    }
    for (int v = 0; v < n; ++v)
        if (in_t_[static_cast<std::size_t>(v)]) t_.push_back(v);
    for (int v : s_) {
        std::vector<int> block{v};
        for (int w : g.neighbors(v)) block.push_back(w);
        std::sort(block.begin(), block.end());
        blocks_.push_back(std::move(block));
    }
    i0_ = greedy_independent_set(g, k);

    const double log1e = std::log(1.0 / eps);
    repeat_cap_ = std::max(1, static_cast<int>(std::ceil(cfg.repeat_multiplier *
                                                         std::pow(std::max(1.0, log1e), 1.5))));
    burn_ = static_cast<long long>(cfg.burn_factor * n * std::log(std::max(2.0, n / eps)));

    // Calibrate the boost.  Two constraints keep the output law unbiased:
    //   (1) p C(|S*|, k') 2^{-|S*|} <= 1 for every gated |S*| (no clamping),
    //   (2) the gated-away strata carry mass P[|S*| < gate] <= eps/20.
    // The floor probability q is estimated from one warmup core sample; p
    // degrades toward 1 (plain rejection, no gate) when the graph is too
    // small for the gate to be cheap.
    const int s_count = static_cast<int>(s_.size());
    double q0 = 1.0;
    {
        HardCoreChain chain(g_, lambda_);
        chain.run(burn_, rng);
        std::vector<char> occ_T(static_cast<std::size_t>(n), 0);
        for (int v : t_)
            occ_T[static_cast<std::size_t>(v)] = chain.occupied()[static_cast<std::size_t>(v)];
        for (int i = 0; i < s_count; ++i) {
            auto tb = block_table(i, occ_T);
            q0 = std::min(q0, std::min(tb.probs[static_cast<std::size_t>(tb.empty_index)],
                                       tb.probs[static_cast<std::size_t>(tb.v_only_index)]));
        }
    }
    auto central = [](int s) {
        mpz_class b = binomial(s, s / 2);
        long e2 = 0;
        double mant = mpz_get_d_2exp(&e2, b.get_mpz_t());
        return mant * std::pow(2.0, static_cast<double>(e2) - s);
    };
    auto binom_cdf_below = [s_count](double prob, int g) {
        // P[Bin(s, prob) < g]
        double acc = 0.0;
        for (int j = 0; j < g; ++j) {
            mpz_class b = binomial(s_count, j);
            long e2 = 0;
            double mant = mpz_get_d_2exp(&e2, b.get_mpz_t());
            acc += mant * std::pow(2.0, static_cast<double>(e2)) * std::pow(prob, j) *
                   std::pow(1 - prob, s_count - j);
        }
        return acc;
    };
    p_ = std::max(1, static_cast<int>(std::ceil(cfg.c * std::sqrt(n / std::max(1.0, log1e)))));
    const double star_prob = std::max(1e-9, 2.0 * q0 * 0.8); // safety-deflated
    for (; p_ > 1; --p_) {
        int g_needed = 0;
        while (g_needed <= s_count && p_ * central(g_needed) > 1.0 + 1e-12) ++g_needed;
        if (g_needed > s_count) continue;
        if (binom_cdf_below(star_prob, g_needed) <= eps / 20.0) {
            gate_ = g_needed;
            break;
        }
    }
    if (p_ <= 1) {
        p_ = 1;
        gate_ = 0;
    }
    if (cfg.c_prime >= 0)
        gate_ = std::max(gate_, static_cast<int>(std::ceil(cfg.c_prime * n)));

    diag_.lambda = lambda_;
    diag_.p = p_;
    diag_.gate = gate_;
    diag_.separated_size = s_count;
    diag_.repeat_cap = repeat_cap_;
}

FastSampler::BlockTable FastSampler::block_table(int block_index,
                                                 const std::vector<char>& occupied_T) const {
    const auto& block = blocks_[static_cast<std::size_t>(block_index)];
    const int v = s_[static_cast<std::size_t>(block_index)];
    const int bsz = static_cast<int>(block.size());
    BlockTable table;
    double norm = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << bsz); ++mask) {
        // Independence within the block and compatibility with J.
        bool ok = true;
        int count = 0;
        for (int i = 0; i < bsz && ok; ++i) {
            if (!(mask & (1u << i))) continue;
            ++count;
            const int u = block[static_cast<std::size_t>(i)];
            for (int w : g_.neighbors(u)) {
                if (in_t_[static_cast<std::size_t>(w)] && occupied_T[static_cast<std::size_t>(w)]) {
                    ok = false;
                    break;
                }
                const auto it = std::lower_bound(block.begin(), block.end(), w);
                if (it != block.end() && *it == w) {
                    const int j = static_cast<int>(it - block.begin());
                    if (j > i && (mask & (1u << j))) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if (!ok) continue;
        const double weight = std::pow(lambda_, count);
        table.masks.push_back(mask);
        table.probs.push_back(weight);
        norm += weight;
        if (mask == 0) table.empty_index = static_cast<int>(table.masks.size()) - 1;
        const auto vit = std::lower_bound(block.begin(), block.end(), v);
        const std::uint32_t vmask = 1u << static_cast<int>(vit - block.begin());
        if (mask == vmask) table.v_only_index = static_cast<int>(table.masks.size()) - 1;
    }
    for (double& p : table.probs) p /= norm;
    return table;
}

std::vector<int> FastSampler::sample(Rng& rng) {
    const int n = g_.vertex_count();
    for (int attempt = 0; attempt < repeat_cap_; ++attempt) {
        ++diag_.attempts;
        // Initialize core: Glauber run, keep J = I' cap T.
        HardCoreChain chain(g_, lambda_);
        chain.run(burn_, rng);
        std::vector<char> occ_T(static_cast<std::size_t>(n), 0);
        int j_size = 0;
        for (int v = 0; v < n; ++v)
            if (in_t_[static_cast<std::size_t>(v)] && chain.occupied()[static_cast<std::size_t>(v)]) {
                occ_T[static_cast<std::size_t>(v)] = 1;
                ++j_size;
            }

        // Per-block tables and the global floor q.
        const int s = static_cast<int>(s_.size());
        std::vector<BlockTable> tables(static_cast<std::size_t>(s));
        double q = 1.0;
        for (int i = 0; i < s; ++i) {
            tables[static_cast<std::size_t>(i)] = block_table(i, occ_T);
            const auto& tb = tables[static_cast<std::size_t>(i)];
            q = std::min(q, std::min(tb.probs[static_cast<std::size_t>(tb.empty_index)],
                                     tb.probs[static_cast<std::size_t>(tb.v_only_index)]));
        }
        diag_.q = q;

        // Resample neighborhoods, step 1.
        std::vector<int> star;             // block indices with W = ?
        std::vector<std::uint32_t> fixed(static_cast<std::size_t>(s), 0);
        int ell = j_size;
        for (int i = 0; i < s; ++i) {
            const auto& tb = tables[static_cast<std::size_t>(i)];
            double u = rng.uniform_real();
            if (u < 2.0 * q) {
                star.push_back(i);
                continue;
            }
            u -= 2.0 * q;
            // Remaining mass: empty (p0 - q), K_v (pv - q), all other K at p_K.
            std::uint32_t chosen = 0;
            bool set = false;
            double pe = tb.probs[static_cast<std::size_t>(tb.empty_index)] - q;
            if (u < pe) {
                chosen = tb.masks[static_cast<std::size_t>(tb.empty_index)];
                set = true;
            } else {
                u -= pe;
                double pv = tb.probs[static_cast<std::size_t>(tb.v_only_index)] - q;
                if (u < pv) {
                    chosen = tb.masks[static_cast<std::size_t>(tb.v_only_index)];
                    set = true;
                } else {
                    u -= pv;
                    for (std::size_t m = 0; m < tb.masks.size(); ++m) {
                        if (static_cast<int>(m) == tb.empty_index ||
                            static_cast<int>(m) == tb.v_only_index)
                            continue;
                        if (u < tb.probs[m]) {
                            chosen = tb.masks[m];
                            set = true;
                            break;
                        }
                        u -= tb.probs[m];
                    }
                    if (!set) { // float mass leakage lands on the last entry
                        chosen = tb.masks.back();
                        set = true;
                    }
                }
            }
            fixed[static_cast<std::size_t>(i)] = chosen;
            ell += __builtin_popcount(chosen);
        }

        // Gate: rounds with too few ?-blocks are retried; the calibration keeps
        // both the clamp-free property and the gated-away mass under eps/20.
        if (static_cast<int>(star.size()) < gate_) {
            ++diag_.aborts_small_sstar;
            continue;
        }

        // Resample neighborhoods, step 2: accept with p C(|S*|, k') 2^{-|S*|};
        // the calibration above keeps this <= 1 for every gated |S*|.
        const int kprime = k_ - ell;
        const int sstar = static_cast<int>(star.size());
        if (kprime < 0 || kprime > sstar) continue;
        double log_acc = std::log(static_cast<double>(p_));
        {
            mpz_class bin = binomial(sstar, kprime);
            long e2 = 0;
            double mant = mpz_get_d_2exp(&e2, bin.get_mpz_t());
            log_acc += std::log(mant) + e2 * 0.6931471805599453 -
                       sstar * 0.6931471805599453;
        }
        double acc = std::exp(std::min(0.0, log_acc));
        if (log_acc > 1e-12) diag_.clamped_acceptance = true;
        if (!(rng.uniform_real() < acc)) continue;

        // Uniform k'-subset of S*: partial Fisher-Yates on a copy.
        std::vector<int> pool = star;
        for (int i = 0; i < kprime; ++i) {
            std::size_t j = i + rng.uniform_index(pool.size() - static_cast<std::size_t>(i));
            std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        }

        std::vector<int> out;
        for (int v = 0; v < n; ++v)
            if (occ_T[static_cast<std::size_t>(v)]) out.push_back(v);
        for (int i = 0; i < s; ++i) {
            const auto& block = blocks_[static_cast<std::size_t>(i)];
            std::uint32_t mask = fixed[static_cast<std::size_t>(i)];
            for (int b = 0; b < static_cast<int>(block.size()); ++b)
                if (mask & (1u << b)) out.push_back(block[static_cast<std::size_t>(b)]);
        }
        for (int i = 0; i < kprime; ++i) out.push_back(s_[static_cast<std::size_t>(pool[static_cast<std::size_t>(i)])]);
        std::sort(out.begin(), out.end());
#ifndef NDEBUG
        for (std::size_t a = 0; a < out.size(); ++a)
            for (std::size_t b = a + 1; b < out.size(); ++b)
                assert(out[a] != out[b] && !g_.has_edge(out[a], out[b]));
        assert(static_cast<int>(out.size()) == k_);
#endif
        return out;
    }
    diag_.fallback_to_greedy = true;
    std::vector<int> fb = i0_;
    std::sort(fb.begin(), fb.end());
    return fb;
}

std::vector<int> fast_sample_k(const Graph& g, int k, double eps, Rng& rng,
                               const SamplerConfig& cfg, FastSampleDiagnostics* diag) {
    FastSampler sampler(g, k, eps, rng, cfg);
    auto out = sampler.sample(rng);
    if (diag) *diag = sampler.diagnostics();
    return out;
}

std::string FprasResult::decimal() const { return log_to_decimal_string(log_value); }

FprasResult fpras_count(const Graph& g, int k, double eps, Rng& rng, const SamplerConfig& cfg,
                        par::Mode mode) {
    const int n = g.vertex_count();
    const int kmax = sampler_max_k(g, cfg.delta);
    if (k < 1 || k > kmax)
        throw precondition_error("k = " + std::to_string(k) + " outside the valid range 1.." +
                                 std::to_string(kmax));
    if (eps <= 0 || eps >= 1) throw precondition_error("eps must lie in (0,1)");

    FprasResult res;
    const double c_small = 0.3;
    if (k <= c_small * std::sqrt(static_cast<double>(n))) {
        res.branch = "subsample";
        const long long samples = static_cast<long long>(std::ceil(24.0 / (eps * eps)));
        const Rng base = rng.split(0x73756273ULL);
        rng.next_u64();
        auto map_block = [&](std::size_t lo, std::size_t hi, std::size_t) {
            long long hits = 0;
            std::vector<int> pick(static_cast<std::size_t>(k));
            for (std::size_t i = lo; i < hi; ++i) {
                Rng child = base.split(static_cast<std::uint64_t>(i) + 1);
                // Uniform k-subset by sequential sampling without replacement.
                std::vector<char> in(static_cast<std::size_t>(n), 0);
                for (int j = 0; j < k; ++j) {
                    int v;
                    do {
                        v = static_cast<int>(child.uniform_index(static_cast<std::size_t>(n)));
                    } while (in[static_cast<std::size_t>(v)]);
                    in[static_cast<std::size_t>(v)] = 1;
                    pick[static_cast<std::size_t>(j)] = v;
                }
                bool indep = true;
                for (int a = 0; a < k && indep; ++a)
                    for (int b = a + 1; b < k; ++b)
                        if (g.has_edge(pick[static_cast<std::size_t>(a)], pick[static_cast<std::size_t>(b)])) {
                            indep = false;
                            break;
                        }
                if (indep) ++hits;
            }
            return hits;
        };
        long long hits = par::map_reduce_blocks<long long>(static_cast<std::size_t>(samples), 256, 0,
                                                           map_block, std::plus<>{}, mode);
        res.samples = samples;
        res.p_hat = static_cast<double>(hits) / static_cast<double>(samples);
        if (res.p_hat <= 0) throw budget_error("no independent subsets observed");
        mpz_class bin = binomial(n, k);
        long e2 = 0;
        double mant = mpz_get_d_2exp(&e2, bin.get_mpz_t());
        res.log_value = std::log(mant) + e2 * 0.6931471805599453 + std::log(res.p_hat);
        return res;
    }

    res.branch = "glauber";
    const double lambda = find_fugacity_randomized(g, k, eps, rng, cfg);
    res.lambda = lambda;
    ApproxValue z = region_evaluate_Z(g, lambda, eps / 2.0, cfg.delta);
    const long long burn = default_burn_in(n, eps);
    const long long samples = static_cast<long long>(
        std::ceil(40.0 * std::sqrt(std::max(1.0, n * lambda)) / (eps * eps)));
    const Rng base = rng.split(0x676c61ULL);
    rng.next_u64();
    auto map_block = [&](std::size_t lo, std::size_t hi, std::size_t) {
        long long hits = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            Rng child = base.split(static_cast<std::uint64_t>(i) + 1);
            HardCoreChain chain(g, lambda);
            chain.run(burn, child);
            if (chain.size() == k) ++hits;
        }
        return hits;
    };
    long long hits = par::map_reduce_blocks<long long>(static_cast<std::size_t>(samples), 16, 0,
                                                       map_block, std::plus<>{}, mode);
    res.samples = samples;
    res.p_hat = static_cast<double>(hits) / static_cast<double>(samples);
    if (res.p_hat <= 0) throw budget_error("no size-k samples observed; increase the budget");
    res.log_value = std::log(z.value.real()) - k * std::log(lambda) + std::log(res.p_hat);
    return res;
}

std::vector<std::pair<int, int>> sample_matching_k(const Graph& g, int k, double eps, Rng& rng,
                                                   const SamplerConfig& cfg) {
    const int mstar = max_matching(g);
    if (k < 1 || k > mstar)
        throw precondition_error("k = " + std::to_string(k) + " outside 1..m* = 1.." +
                                 std::to_string(mstar));
    Graph lg = line_graph(g);
    std::vector<int> lv = fast_sample_k(lg, k, eps, rng, cfg);
    std::vector<std::pair<int, int>> out;
    for (int id : lv) out.push_back(g.edges()[static_cast<std::size_t>(id)]);
#ifndef NDEBUG
    std::vector<char> used(static_cast<std::size_t>(g.vertex_count()), 0);
    for (auto [u, v] : out) {
        assert(!used[static_cast<std::size_t>(u)] && !used[static_cast<std::size_t>(v)]);
        used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = 1;
    }
#endif
    return out;
}

} // namespace hardcount
