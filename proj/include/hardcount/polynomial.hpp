#ifndef HARDCOUNT_POLYNOMIAL_HPP
#define HARDCOUNT_POLYNOMIAL_HPP

#include <complex>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hardcount {

using cld = std::complex<long double>;

// Polynomial with exact integer coefficients, constant term normalized to 1 in
// all partition-function uses (coeffs[k] = number of size-k configurations).
struct IntPolynomial {
    std::vector<mpz_class> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    const mpz_class& operator[](std::size_t k) const { return coeffs[k]; }

    bool operator==(const IntPolynomial&) const = default;
};

mpz_class binomial(long n, long k);

// Horner evaluation with coefficients converted to complex long double.
cld evaluate_poly(const IntPolynomial& p, cld z);

// log of p evaluated at real lambda > 0 without overflow (log-sum-exp over
// coeff * lambda^k terms, all positive).
long double log_evaluate_poly(const IntPolynomial& p, long double lambda);

// Power sums of the inverse roots of p (p(0)=1 required): p(x) = prod(1 - r_i x),
// power_sums[m-1] = sum_i r_i^m for m = 1..count.  Exact integers via Newton's
// identities.  The Taylor series of log p at 0 is -sum_m power_sums[m-1] x^m / m.
std::vector<mpz_class> inverse_root_power_sums(const IntPolynomial& p, int count);

// Decimal string of exp(log_value) for log in natural base, e.g. "1.234e+56".
std::string log_to_decimal_string(long double log_value, int digits = 15);

} // namespace hardcount

#endif
