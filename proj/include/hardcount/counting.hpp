#ifndef HARDCOUNT_COUNTING_HPP
#define HARDCOUNT_COUNTING_HPP

#include <string>

#include "hardcount/approx.hpp"
#include "hardcount/graph.hpp"
#include "hardcount/parallel.hpp"
#include "hardcount/region.hpp"

namespace hardcount {

// Tunable pipeline constants surfaced by the CLI; defaults per the docs.
struct CountingConfig {
    double delta = 0.1;        // margin off the critical thresholds
    double grid_constant = 0.0; // fugacity grid step 1/(C n); 0 = auto 8(Delta+1)
    double fourier_constant = 4.0; // gamma = min(pi sigma, C sqrt(log 1/eps))
    double c_cal = 0.1; // calibrated bound |E e^{i theta Y}| <= exp(-c_cal lambda n theta^2)
    double lclt_constant = 0.2; // fitted constant for the EPTAS slack report
    double lambda_cap = 1e5;    // search cap for claw-free fugacity brackets
};

struct FugacityBracket {
    double lambda = 0.0;
    double grid_constant = 0.0;
    int target_k = 0;
    double mean_estimate = 0.0;
    double mean_err = 0.0; // additive error of the mean estimate (<= 1/4)
};

// Deterministic bracket: lambda on the grid t/(C n) with
// |mean_estimate - k| <= 1/2, monotone bisection, ties to the smaller lambda.
FugacityBracket find_fugacity_deterministic(const Graph& g, int k,
                                            const CountingConfig& cfg = {});

// Standardized characteristic function E[e^{itX}], X = (Y-mu)/sigma, via two
// region evaluations and certified moments.  Throws region_error when
// lambda e^{it/sigma_hat} leaves the declared region.
ApproxValue characteristic_approx(const Graph& g, double lambda, double t, double eps,
                                  const CountingConfig& cfg = {});

struct FourierPlan {
    double lambda = 0.0;
    double mu_hat = 0.0, sigma_hat = 0.0;
    double mu_err = 0.0, sigma2_err = 0.0;
    double gamma = 0.0, h = 0.0, x_hat = 0.0;
    int node_count = 0;
    double eps_node = 0.0;
    double budget_tail = 0.0, budget_disc = 0.0; // integral units
    double c_cal = 0.0;
};

struct CountEstimate {
    double log_value = 0.0; // natural log of the estimate
    double rel_err = 0.0;   // certified numeric envelope (log scale)
    double lclt_slack = 0.0; // reported separately for the EPTAS
    double lambda = 0.0;
    double sigma_hat = 0.0;
    int plan_nodes = 0;
    int dropped_nodes = 0;
    double c_cal_used = 0.0;
    std::string method;

    std::string decimal() const;
};

// Gaussian-density estimator lambda^{-k} Z (sqrt(2 pi) sigma)^{-1} e^{-x^2/2}.
CountEstimate eptas_count(const Graph& g, int k, double eps, const CountingConfig& cfg = {});

// Fourier-inversion estimator with a three-way error budget (high-phase tail,
// Riemann discretization, per-node approximation).
CountEstimate fptas_count(const Graph& g, int k, double eps, const CountingConfig& cfg = {},
                          par::Mode mode = par::default_mode());

// m_k via the line graph; k <= (1-delta) m*(G), m* by maximum matching.
CountEstimate count_matchings(const Graph& g, int k, double eps, const CountingConfig& cfg = {},
                              par::Mode mode = par::default_mode());

// Exact i_k for the small-k path: coefficient extraction from the exponential
// of the truncated cluster series (requires k within the cluster guard).
mpz_class small_k_exact_count(const Graph& g, int k);

} // namespace hardcount

#endif
