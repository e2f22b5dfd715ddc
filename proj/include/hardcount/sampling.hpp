#ifndef HARDCOUNT_SAMPLING_HPP
#define HARDCOUNT_SAMPLING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hardcount/graph.hpp"
#include "hardcount/parallel.hpp"
#include "hardcount/rng.hpp"

namespace hardcount {

// Single-site heat-bath chain for the hard-core model.  The current set is
// kept independent after every step (asserted in debug builds).
class HardCoreChain {
public:
    HardCoreChain(const Graph& g, double lambda);

    void step(Rng& rng);
    void run(long long steps, Rng& rng);
    const std::vector<char>& occupied() const { return occupied_; }
    std::vector<int> current_set() const;
    int size() const { return size_; }
    long long steps_taken() const { return steps_; }

private:
    const Graph& g_;
    double p_occupy_;
    std::vector<char> occupied_;
    std::vector<int> blocked_; // occupied-neighbor counts
    int size_ = 0;
    long long steps_ = 0;
};

// Size-preserving swap walk on independent sets of size k.
class DownUpChain {
public:
    DownUpChain(const Graph& g, std::vector<int> initial);

    void step(Rng& rng);
    void run(long long steps, Rng& rng);
    const std::vector<int>& members() const { return members_; }
    std::vector<int> sorted_members() const;

private:
    const Graph& g_;
    std::vector<int> members_;
    std::vector<int> pos_;     // vertex -> index in members_, -1 if absent
    std::vector<int> blocked_; // occupied-neighbor counts
};

// Default burn-in: ceil(10 n ln(n/eps)).
long long default_burn_in(int n, double eps);

// One hard-core sample after a fresh burn-in from the empty set.
std::vector<int> glauber_run(const Graph& g, double lambda, long long steps, Rng& rng);

struct SamplerConfig {
    double c = 0.5;          // modulus scale: p = ceil(c sqrt(n / log(1/eps)))
    double c_prime = -1.0;   // abort threshold fraction; <0 = half the expected |S*|
    int repeat_multiplier = 8; // cap = ceil(C log(1/eps)^{3/2})
    double burn_factor = 10.0;
    double delta = 0.1;
    int finder_runs = 0;     // 0 = auto ceil(6 log(n/eps))
};

// Randomized fugacity finder: lambda = k/n for k <= sqrt(n), otherwise binary
// search over the grid Z/n^2 driven by median-of-Glauber-runs estimates.
double find_fugacity_randomized(const Graph& g, int k, double eps, Rng& rng,
                                const SamplerConfig& cfg = {});

struct RejectionResult {
    std::optional<std::vector<int>> set;
    long long tries = 0;
};

RejectionResult rejection_sample_k(const Graph& g, double lambda, int k, Rng& rng,
                                   long long max_tries, const SamplerConfig& cfg = {});

struct FastSampleDiagnostics {
    double lambda = 0.0;
    int p = 0;
    int gate = 0; // minimum |S*| accepted by a round
    int separated_size = 0;
    double q = 0.0;           // last attempt's floor probability
    int repeat_cap = 0;
    long long attempts = 0;
    long long aborts_small_sstar = 0;
    bool fallback_to_greedy = false;
    bool clamped_acceptance = false;
};

// Quasi-linear sampler: Glauber core on T, per-neighborhood resampling with a
// mod-p acceptance step, greedy fallback after the repeat cap.
class FastSampler {
public:
    FastSampler(const Graph& g, int k, double eps, Rng& rng, const SamplerConfig& cfg = {});

    std::vector<int> sample(Rng& rng);
    const FastSampleDiagnostics& diagnostics() const { return diag_; }
    double lambda() const { return lambda_; }

    // Conditional block table P[I cap N[v] = K | I cap T = J]; exposed for the
    // invariant tests (rows sum to 1, mod-p flattening).
    struct BlockTable {
        std::vector<std::uint32_t> masks; // subsets of the block vertex list
        std::vector<double> probs;
        int v_only_index = -1; // index of K_v = {v}
        int empty_index = -1;
    };
    BlockTable block_table(int block_index, const std::vector<char>& occupied_T) const;

    const std::vector<int>& separated() const { return s_; }
    const std::vector<int>& core() const { return t_; }
    const std::vector<int>& block_vertices(int block_index) const {
        return blocks_[static_cast<std::size_t>(block_index)];
    }

private:
    const Graph& g_;
    int k_;
    double eps_;
    SamplerConfig cfg_;
    double lambda_;
    std::vector<int> s_;                 // separated set
    std::vector<int> t_;                 // core vertices (distance >= 2 from S)
    std::vector<char> in_t_;
    std::vector<std::vector<int>> blocks_; // closed neighborhoods of S
    std::vector<int> i0_;                // greedy fallback
    int p_ = 1;
    int gate_ = 0;
    int repeat_cap_ = 1;
    long long burn_ = 0;
    FastSampleDiagnostics diag_;
};

std::vector<int> fast_sample_k(const Graph& g, int k, double eps, Rng& rng,
                               const SamplerConfig& cfg = {},
                               FastSampleDiagnostics* diag = nullptr);

struct FprasResult {
    double log_value = 0.0;
    double p_hat = 0.0;
    double lambda = 0.0; // 0 in the subsample branch (no fugacity involved)
    long long samples = 0;
    std::string branch; // "subsample" (small k) or "glauber"
    std::string decimal() const;
};

// Randomized i_k estimator: uniform k-subset hit rate for small k, Glauber
// hit rate times an approximate partition function otherwise.
FprasResult fpras_count(const Graph& g, int k, double eps, Rng& rng,
                        const SamplerConfig& cfg = {},
                        par::Mode mode = par::default_mode());

// Uniform-ish matching sampler through the line graph.
std::vector<std::pair<int, int>> sample_matching_k(const Graph& g, int k, double eps, Rng& rng,
                                                   const SamplerConfig& cfg = {});

} // namespace hardcount

#endif
