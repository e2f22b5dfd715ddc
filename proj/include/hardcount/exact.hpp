#ifndef HARDCOUNT_EXACT_HPP
#define HARDCOUNT_EXACT_HPP

#include <complex>
#include <vector>

#include "hardcount/graph.hpp"
#include "hardcount/polynomial.hpp"

namespace hardcount {

inline constexpr int kExactGuardDefault = 40;

// Exact independence polynomial via the branching recursion
// Z(G) = Z(G - v) + lambda Z(G - N[v]) on a max-remaining-degree pivot.
// Guarded: throws precondition_error when n exceeds the guard.
IntPolynomial independence_polynomial(const Graph& g, int guard = kExactGuardDefault);

// m_k sequence = independence polynomial of the line graph.
IntPolynomial matching_counts(const Graph& g, int guard = kExactGuardDefault);

// Transfer recurrences for paths and cycles, exact to n in the thousands.
IntPolynomial path_polynomial_transfer(int n);
IntPolynomial cycle_polynomial_transfer(int n);

// Closed forms, implemented independently of the recurrences:
//   i_k(P_n) = C(n-k+1, k),   i_k(C_n) = n/(n-k) C(n-k, k).
IntPolynomial path_polynomial_closed(int n);
IntPolynomial cycle_polynomial_closed(int n);

cld evaluate_Z(const IntPolynomial& p, cld lambda);

struct SizeDistribution {
    double lambda = 0.0;
    std::vector<double> probs;
    double mean = 0.0;
    double variance = 0.0;
    double kappa3 = 0.0;
    double kappa4 = 0.0;
};

// Hard-core size law P[Y=k] = i_k lambda^k / Z with exact coefficients;
// computed in log space so large n stays finite.
SizeDistribution size_distribution(const IntPolynomial& p, double lambda);

// E[e^{itY}] = Z(lambda e^{it}) / Z(lambda).
std::complex<double> characteristic_function(const IntPolynomial& p, double lambda, double t);

// Maximum matching size by augmenting paths with blossom contraction.
int max_matching(const Graph& g);

} // namespace hardcount

#endif
