#include "hardcount/lclt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hardcount {

double normal_density(double x) { return std::exp(-x * x / 2.0) / std::sqrt(2.0 * M_PI); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

LcltReport lclt_error(const IntPolynomial& poly, double lambda, int n, const std::string& family) {
    LcltReport rep;
    rep.family = family;
    rep.n = n;
    rep.lambda = lambda;
    SizeDistribution dist = size_distribution(poly, lambda);
    const double mu = dist.mean;
    const double sigma = std::sqrt(dist.variance);
    rep.sigma2 = dist.variance;

    // Sup over all integers: outside the support the law is 0 but the Gaussian
    // density is not; scan the support plus a generous window.
    const int lo = std::min<int>(0, static_cast<int>(std::floor(mu - 12.0 * sigma)));
    const int hi = std::max<int>(static_cast<int>(dist.probs.size()) - 1,
                                 static_cast<int>(std::ceil(mu + 12.0 * sigma)));
    double sup = 0.0;
    for (int t = lo; t <= hi; ++t) {
        const double pk =
            (t >= 0 && t < static_cast<int>(dist.probs.size())) ? dist.probs[static_cast<std::size_t>(t)] : 0.0;
        const double gauss = normal_density((t - mu) / sigma) / sigma;
        sup = std::max(sup, std::abs(gauss - pk));
    }
    rep.sup_error = sup;
    const double logn = std::log(std::max(3, n));
    rep.normalized = sup * dist.variance / std::pow(logn, 2.5);
    rep.clt_kolmogorov = clt_distance(poly, lambda);
    rep.fitted_c = fourier_profile(poly, lambda, n, {}).fitted_c;
    rep.regime_polylog = std::pow(logn, 2.5) / dist.variance;
    rep.regime_binomial = 1.0 / dist.variance +
                          std::pow(dist.variance, 3.0) * logn * logn / std::max(1, n);
    rep.regime_min = std::min(rep.regime_polylog, rep.regime_binomial);
    return rep;
}

double clt_distance(const IntPolynomial& poly, double lambda) {
    SizeDistribution dist = size_distribution(poly, lambda);
    const double mu = dist.mean;
    const double sigma = std::sqrt(dist.variance);
    double cdf = 0.0;
    double sup = 0.0;
    for (std::size_t k = 0; k < dist.probs.size(); ++k) {
        const double x = (static_cast<double>(k) - mu) / sigma;
        // Jump point: compare both one-sided limits at the lattice site.
        sup = std::max(sup, std::abs(normal_cdf(x) - cdf)); // left limit
        cdf += dist.probs[k];
        sup = std::max(sup, std::abs(normal_cdf(x) - cdf)); // right value
    }
    return sup;
}

FourierProfile fourier_profile(const IntPolynomial& poly, double lambda, int n,
                               const std::vector<double>& t_grid) {
    FourierProfile prof;
    std::vector<double> grid = t_grid;
    if (grid.empty()) {
        for (int i = 1; i <= 24; ++i) grid.push_back(M_PI * i / 24.0);
    }
    double fitted = std::numeric_limits<double>::infinity();
    std::vector<double> moduli(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const double mod = std::abs(characteristic_function(poly, lambda, t));
        moduli[i] = mod;
        if (t != 0.0) {
            // Largest c with mod <= exp(-c lambda n t^2); floor the modulus at
            // the numeric noise level.
            const double m = std::max(mod, 1e-14);
            fitted = std::min(fitted, -std::log(m) / (lambda * n * t * t));
        }
    }
    if (!std::isfinite(fitted)) fitted = 0.0;
    fitted = std::max(fitted, 0.0);
    prof.fitted_c = fitted;
    for (std::size_t i = 0; i < grid.size(); ++i)
        prof.rows.push_back({grid[i], moduli[i],
                             std::exp(-fitted * lambda * n * grid[i] * grid[i])});
    return prof;
}

VarianceCheck variance_bound_check(const IntPolynomial& poly, double lambda, int n,
                                   int max_degree) {
    VarianceCheck vc;
    SizeDistribution dist = size_distribution(poly, lambda);
    vc.variance = dist.variance;
    vc.lower_bound = lambda * n /
                     ((max_degree + 1) * std::pow(1.0 + lambda, 2.0 + max_degree));
    vc.lower_ok = vc.variance >= vc.lower_bound;
    vc.ratio_to_lambda_n = vc.variance / (lambda * n);
    return vc;
}

std::vector<LowPhaseRow> low_phase_profile(const IntPolynomial& poly, double lambda,
                                           const std::vector<double>& t_grid) {
    SizeDistribution dist = size_distribution(poly, lambda);
    const double mu = dist.mean;
    const double sigma = std::sqrt(dist.variance);
    std::vector<LowPhaseRow> rows;
    for (double t : t_grid) {
        // phi_X(t) = e^{-it mu/sigma} phi_Y(t/sigma); phi_Z(t) = e^{-t^2/2}.
        std::complex<double> phi_x = characteristic_function(poly, lambda, t / sigma) *
                                     std::exp(std::complex<double>(0.0, -t * mu / sigma));
        const double gap = std::abs(phi_x - std::complex<double>(std::exp(-t * t / 2), 0.0));
        rows.push_back({t, gap * sigma});
    }
    return rows;
}

std::vector<LcltReport> cycle_sweep(const std::vector<int>& sizes, double lambda, par::Mode mode) {
    std::vector<LcltReport> out(sizes.size());
    par::for_each_index(sizes.size(), [&](std::size_t i) {
        IntPolynomial poly = cycle_polynomial_transfer(sizes[i]);
        out[i] = lclt_error(poly, lambda, sizes[i], "cycle");
    }, mode);
    return out;
}

std::string reports_to_csv(const std::vector<LcltReport>& reports) {
    std::ostringstream os;
    os << "family,n,lambda,sigma2,sup_error,normalized,clt_kolmogorov,fitted_c\n";
    char buf[256];
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof buf, "%s,%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      r.family.c_str(), r.n, r.lambda, r.sigma2, r.sup_error, r.normalized,
                      r.clt_kolmogorov, r.fitted_c);
        os << buf;
    }
    return os.str();
}

} // namespace hardcount
