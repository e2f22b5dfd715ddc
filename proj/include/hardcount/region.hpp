#ifndef HARDCOUNT_REGION_HPP
#define HARDCOUNT_REGION_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hardcount/approx.hpp"
#include "hardcount/exact.hpp"
#include "hardcount/graph.hpp"
#include "hardcount/polynomial.hpp"

namespace hardcount {

// Shearer radius (Delta-1)^(Delta-1)/Delta^Delta; every graph of max degree
// Delta has no independence-polynomial root inside this disk.  For Delta <= 1
// the only root is at -1.
double shearer_radius(int max_degree);

enum class RegionKind { shearer_disk, half_plane, real_disk };

// Declared zero-free region used to certify series truncations.
//  - shearer_disk: |z| < radius, unconditionally valid.
//  - half_plane: Re z > min_re, valid for claw-free inputs (roots are on the
//    negative real axis at or below -1/(e(Delta+1))).
//  - real_disk: disk centered on the real axis; reaches beyond the Shearer
//    scale and is a documented heuristic (flagged in every certificate).
struct ZeroFreeRegion {
    RegionKind kind = RegionKind::shearer_disk;
    double radius = 0.0;     // shearer_disk
    double min_re = 0.0;     // half_plane
    double center = 0.0;     // real_disk (real center)
    double disk_radius = 0.0;
    bool heuristic = false;

    bool contains(std::complex<double> z) const;
    std::string describe() const;
};

// Moebius interpolation map f(y) = target (1+d1) y / (1 + d1 y), so f(0) = 0
// and f(1) = target exactly.  Roots of Z(f(y)) stay outside |y| < 1/eta when
// f maps that disk into the declared region; the containment check samples the
// circle of radius 1/eta at sample_count points.
struct RegionMap {
    std::complex<double> target;
    std::complex<double> d1;
    double eta = 0.0; // inverse-root modulus bound for log Z(f(y)) coefficients
    ZeroFreeRegion region;
    int sample_count = 10000;
    bool sampled_image_check = false;

    std::complex<double> map(std::complex<double> y) const {
        return target * ((1.0 + d1) * y) / (1.0 + d1 * y);
    }
    // Runs the circle-sampling check; throws certification_error with the
    // offending point on failure.
    void check_containment();
};

// Map construction for a real fugacity target.
RegionMap build_region_map(int max_degree, double delta, double lambda_target, bool claw_free);

// Map construction for a complex target (characteristic-function nodes).
// lambda_scale sizes the heuristic disk; pass the real bracket fugacity.
RegionMap build_region_map_to(int max_degree, double delta, std::complex<double> target,
                              bool claw_free, double lambda_scale);

// Taylor coefficients of log Z_G at 0, exact rationals.  Orders up to the
// cluster guard come from the cluster engine; beyond that an exact coefficient
// source (small n, or path/cycle structure) is required.
struct LogZTaylor {
    std::vector<mpq_class> coeffs; // order j at index j-1
    int order = 0;
};

LogZTaylor log_z_taylor(const Graph& g, int t);

// Exact coefficient source: branching for n <= guard, transfer recurrences for
// graphs of max degree <= 2 (componentwise).  nullopt when unavailable.
std::optional<IntPolynomial> exact_coefficients(const Graph& g);

struct EvalCertificate {
    RegionKind kind = RegionKind::shearer_disk;
    bool heuristic_region = false;
    double eta = 0.0;
    int truncation_order = 0;
    double tail_bound = 0.0;
    std::string region_note;
};

struct LogEvaluation {
    std::complex<double> log_value;
    double err = 0.0; // |computed - log Z| bound
    EvalCertificate cert;
};

// log Z_G(target) by truncated interpolation series with a certified tail.
LogEvaluation log_evaluate_region(const Graph& g, std::complex<double> target, double eps,
                                  double delta, double lambda_scale = -1.0);

// Z_G(lambda) inside the Shearer disk, to relative accuracy eps.
ApproxValue disk_evaluate_Z(const Graph& g, std::complex<double> lambda, double eps,
                            double delta = 0.1);

// Z_G(lambda) for real lambda in (0, (1-delta) lambda_c] (any lambda > 0 for
// claw-free inputs).
ApproxValue region_evaluate_Z(const Graph& g, double lambda, double eps, double delta = 0.1);

struct CumulantEstimate {
    double value = 0.0;
    double add_err = 0.0; // certified additive error
    bool via_cluster = false;
    EvalCertificate cert;
};

// kappa_k(Y) to additive accuracy eps * lambda * n; k <= 4.  Dispatches to the
// cluster truncation when the KP-certified order is enumeration-feasible.
CumulantEstimate cumulant_via_interpolation(const Graph& g, double lambda, int k, double eps,
                                            double delta = 0.1);

struct MeanVariance {
    double mean = 0.0;
    double variance = 0.0;
    double mean_err = 0.0;
    double variance_err = 0.0;
};

MeanVariance mean_variance(const Graph& g, double lambda, double eps, double delta = 0.1);

// Largest k the deterministic counting pipeline accepts for this graph:
// (1-delta) alpha_c(Delta) n for hard-core inputs, (1-delta) i*(G) for
// claw-free ones (max degree <= 2 or line graphs).
int max_valid_k(const Graph& g, double delta);

} // namespace hardcount

#endif
