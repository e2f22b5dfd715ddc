#ifndef HARDCOUNT_LCLT_HPP
#define HARDCOUNT_LCLT_HPP

#include <string>
#include <vector>

#include "hardcount/exact.hpp"
#include "hardcount/graph.hpp"
#include "hardcount/parallel.hpp"
#include "hardcount/polynomial.hpp"

namespace hardcount {

struct LcltReport {
    std::string family;
    int n = 0;
    double lambda = 0.0;
    double sigma2 = 0.0;
    double sup_error = 0.0;      // sup_t |N((t-mu)/sigma)/sigma - P[Y=t]|
    double normalized = 0.0;     // sup_error * sigma^2 / (log n)^{5/2}
    double clt_kolmogorov = 0.0; // sup_x |P[(Y-mu)/sigma <= x] - Phi(x)|
    double fitted_c = 0.0;       // largest c with |E e^{itY}| <= exp(-c lambda n t^2) on the grid
    // Both error-rate regimes, up to their implicit constants; the smaller one
    // is the operative rate at this size.
    double regime_polylog = 0.0;  // (log n)^{5/2} / sigma^2
    double regime_binomial = 0.0; // 1/sigma^2 + sigma^6 (log n)^2 / n
    double regime_min = 0.0;
    std::string method = "exact_oracle";
};

double normal_density(double x);
double normal_cdf(double x);

LcltReport lclt_error(const IntPolynomial& poly, double lambda, int n, const std::string& family);
double clt_distance(const IntPolynomial& poly, double lambda);

struct FourierRow {
    double t = 0.0;
    double modulus = 0.0;
    double bound = 0.0; // exp(-fitted_c lambda n t^2)
};

struct FourierProfile {
    std::vector<FourierRow> rows;
    double fitted_c = 0.0;
};

FourierProfile fourier_profile(const IntPolynomial& poly, double lambda, int n,
                               const std::vector<double>& t_grid);

struct VarianceCheck {
    double variance = 0.0;
    double lower_bound = 0.0;
    bool lower_ok = false;
    double ratio_to_lambda_n = 0.0;
};

struct LowPhaseRow {
    double t = 0.0;
    double gap_times_sigma = 0.0; // |phi_X(t) - phi_Z(t)| * sigma
};

// Recorded (not asserted): the low-phase gap between the standardized
// characteristic function and the Gaussian one, scaled by sigma.
std::vector<LowPhaseRow> low_phase_profile(const IntPolynomial& poly, double lambda,
                                           const std::vector<double>& t_grid);

VarianceCheck variance_bound_check(const IntPolynomial& poly, double lambda, int n, int max_degree);

// Family sweep over cycle sizes; parallel over n, ordered output, byte-stable.
std::vector<LcltReport> cycle_sweep(const std::vector<int>& sizes, double lambda,
                                    par::Mode mode = par::default_mode());

std::string reports_to_csv(const std::vector<LcltReport>& reports);

} // namespace hardcount

#endif
