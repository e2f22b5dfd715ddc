#include "hardcount/polynomial.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace hardcount {

mpz_class binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

static long double to_ld(const mpz_class& z) {
    // mpz_get_d saturates around 1e308; go through 2-exponent form instead.
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return static_cast<long double>(mant) * std::pow(2.0L, static_cast<long double>(exp2));
}

cld evaluate_poly(const IntPolynomial& p, cld z) {
    cld acc(0.0L, 0.0L);
    for (std::size_t i = p.coeffs.size(); i-- > 0;)
        acc = acc * z + cld(to_ld(p.coeffs[i]), 0.0L);
    return acc;
}

long double log_evaluate_poly(const IntPolynomial& p, long double lambda) {
    if (lambda <= 0.0L) {
        if (lambda == 0.0L) return 0.0L;
        throw std::invalid_argument("log_evaluate_poly needs lambda >= 0");
    }
    const long double ll = std::log(lambda);
    // Terms log(c_k) + k log(lambda); all positive coefficients.
    long double mx = -std::numeric_limits<long double>::infinity();
    std::vector<long double> lg(p.coeffs.size());
    for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
        long exp2 = 0;
        double mant = mpz_get_d_2exp(&exp2, p.coeffs[k].get_mpz_t());
        if (mant == 0.0) {
            lg[k] = -std::numeric_limits<long double>::infinity();
            continue;
        }
        lg[k] = std::log(static_cast<long double>(mant)) +
                static_cast<long double>(exp2) * 0.6931471805599453094L +
                static_cast<long double>(k) * ll;
        if (lg[k] > mx) mx = lg[k];
    }
    long double s = 0.0L;
    for (long double t : lg) s += std::exp(t - mx);
    return mx + std::log(s);
}

std::vector<mpz_class> inverse_root_power_sums(const IntPolynomial& p, int count) {
    if (p.coeffs.empty() || p.coeffs[0] != 1)
        throw std::invalid_argument("power sums need constant term 1");
    const int d = p.degree();
    std::vector<mpz_class> ps(static_cast<std::size_t>(count));
    // With p(x) = 1 + a_1 x + ... + a_d x^d = prod (1 - r_i x):
    //   s_m = -m a_m - sum_{j=1}^{m-1} a_j s_{m-j}   (m <= d)
    //   s_m = -sum_{j=1}^{d} a_j s_{m-j}             (m > d)
    for (int m = 1; m <= count; ++m) {
        mpz_class acc = 0;
        if (m <= d) acc = -m * p.coeffs[static_cast<std::size_t>(m)];
        const int jmax = std::min(m - 1, d);
        for (int j = 1; j <= jmax; ++j)
            acc -= p.coeffs[static_cast<std::size_t>(j)] * ps[static_cast<std::size_t>(m - j - 1)];
        ps[static_cast<std::size_t>(m - 1)] = acc;
    }
    return ps;
}

std::string log_to_decimal_string(long double log_value, int digits) {
    if (std::isnan(static_cast<double>(log_value))) return "nan";
    const long double log10v = log_value / 2.302585092994045684L;
    long double ip = std::floor(log10v);
    long double mant = std::pow(10.0L, log10v - ip);
    // Guard against mantissa rounding to 10.
    if (mant >= 10.0L) {
        mant /= 10.0L;
        ip += 1.0L;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Lfe%+lld", digits - 1, mant, static_cast<long long>(ip));
    return buf;
}

} // namespace hardcount
