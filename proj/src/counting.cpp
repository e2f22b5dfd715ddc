#include "hardcount/counting.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hardcount/cluster.hpp"
#include "hardcount/lclt.hpp"

namespace hardcount {

namespace {

double auto_grid_constant(const Graph& g, const CountingConfig& cfg) {
    if (cfg.grid_constant > 0) return cfg.grid_constant;
    return 8.0 * (g.max_degree() + 1);
}

// Mean estimate with additive error <= err_target.
double mean_at(const Graph& g, double lambda, double err_target, const CountingConfig& cfg,
               double* err_out = nullptr) {
    const double n = g.vertex_count();
    const double eps = err_target / (lambda * n);
    auto est = cumulant_via_interpolation(g, lambda, 1, eps, cfg.delta);
    if (err_out) *err_out = est.add_err;
    return est.value;
}

} // namespace

FugacityBracket find_fugacity_deterministic(const Graph& g, int k, const CountingConfig& cfg) {
    const int n = g.vertex_count();
    const int kmax = max_valid_k(g, cfg.delta);
    if (k < 1 || k > kmax)
        throw precondition_error("k = " + std::to_string(k) + " outside the valid range 1.." +
                                 std::to_string(kmax));

    double C = auto_grid_constant(g, cfg);
    for (int attempt = 0; attempt < 4; ++attempt) {
        const double step = 1.0 / (C * n);
        // Mean accuracy 1/8 keeps the bracket within 1/2 once the true mean
        // moves by at most 1/4 per grid step.
        const double acc = 0.125;
        std::map<long long, double> memo;
        auto est = [&](long long t) {
            auto it = memo.find(t);
            if (it != memo.end()) return it->second;
            double v = mean_at(g, static_cast<double>(t) * step, acc, cfg);
            memo.emplace(t, v);
            return v;
        };

        // Find an upper grid index by doubling.  The mean can approach k from
        // below when k sits at the independence number, so stop as soon as a
        // bracket candidate is reachable.
        long long hi = std::max<long long>(1, static_cast<long long>(C));
        double cap = cfg.lambda_cap;
        if (!g.claw_free_hint() && g.max_degree() >= 3)
            cap = (1.0 - cfg.delta) * mpq_get_d(critical_fugacity(g.max_degree()).get_mpq_t());
        const long long t_cap = static_cast<long long>(std::floor(cap / step));
        while (est(hi) < k - 0.25 && hi < t_cap) hi = std::min(t_cap, hi * 2);
        if (est(hi) < k - 0.5)
            throw precondition_error("fugacity search hit the lambda cap before reaching mean k");

        long long lo = 0;
        while (lo < hi) { // smallest t with est >= k - 0.25
            long long mid = lo + (hi - lo) / 2;
            if (est(mid) >= k - 0.25) hi = mid;
            else lo = mid + 1;
        }
        // Prefer the smaller lambda when both neighbors satisfy the bracket.
        for (long long t : {lo - 1, lo}) {
            if (t < 1) continue;
            double m = est(t);
            if (std::abs(m - k) <= 0.5) {
                FugacityBracket b;
                b.lambda = static_cast<double>(t) * step;
                b.grid_constant = C;
                b.target_k = k;
                b.mean_estimate = m;
                b.mean_err = acc;
                return b;
            }
        }
        C *= 4.0; // grid too coarse for this instance; refine and retry
    }
    throw certification_error("fugacity bracket not found on the refined grid");
}

namespace {

struct Moments {
    double mu = 0.0, sigma = 0.0, sigma2 = 0.0;
    double mu_err = 0.0, var_err = 0.0;
};

// Moments accurate enough for the plan: mu within min(1/4, sigma/8), variance
// within sigma^2/8.
Moments plan_moments(const Graph& g, double lambda, const CountingConfig& cfg) {
    const double n = g.vertex_count();
    double err_target = 0.25;
    Moments m;
    for (int round = 0; round < 4; ++round) {
        const double eps = err_target / (lambda * n);
        auto k1 = cumulant_via_interpolation(g, lambda, 1, eps, cfg.delta);
        auto k2 = cumulant_via_interpolation(g, lambda, 2, eps, cfg.delta);
        m.mu = k1.value;
        m.sigma2 = k2.value;
        m.mu_err = k1.add_err;
        m.var_err = k2.add_err;
        if (m.sigma2 <= 0)
            throw certification_error("variance estimate nonpositive at lambda = " +
                                      std::to_string(lambda));
        m.sigma = std::sqrt(m.sigma2);
        const double want = std::min({0.25, m.sigma / 8.0, m.sigma2 / 8.0});
        if (m.mu_err <= want && m.var_err <= m.sigma2 / 8.0) return m;
        err_target = want * 0.9;
    }
    return m;
}

} // namespace

ApproxValue characteristic_approx(const Graph& g, double lambda, double t, double eps,
                                  const CountingConfig& cfg) {
    if (eps <= 0 || eps >= 1) throw precondition_error("characteristic approx needs eps in (0,1)");
    if (std::abs(t) > cfg.fourier_constant * std::sqrt(std::max(1.0, std::log(1.0 / eps))) + 1e-9)
        throw precondition_error("phase t outside the supported window");
    Moments m = plan_moments(g, lambda, cfg);
    const double eps_z = eps / 4.0;
    const std::complex<double> target =
        lambda * std::exp(std::complex<double>(0.0, t / m.sigma));
    // May throw region_error; callers fall back to the high-phase budget.
    LogEvaluation num = log_evaluate_region(g, target, eps_z, cfg.delta, lambda);
    LogEvaluation den = log_evaluate_region(g, lambda, eps_z, cfg.delta, lambda);
    const std::complex<double> phase(0.0, -t * m.mu / m.sigma);
    ApproxValue av;
    av.value = std::exp(num.log_value - den.log_value + phase);
    // Envelope versus the true standardized X: the sigma_hat/mu_hat slop enters
    // as extra phase and an additive term scaled by mu |t| d(1/sigma).
    const double sigma_lo = m.sigma - m.var_err / (2.0 * m.sigma);
    if (sigma_lo <= 0) throw certification_error("sigma estimate too loose");
    const double dsigma = m.var_err / (2.0 * m.sigma);
    const double phase_slop =
        std::abs(t) * (m.mu_err / sigma_lo + m.mu * dsigma / (sigma_lo * sigma_lo));
    av.rel_err = num.err + den.err + phase_slop;
    av.add_err = m.mu * std::abs(t) * dsigma / (sigma_lo * sigma_lo);
    return av;
}

std::string CountEstimate::decimal() const { return log_to_decimal_string(log_value); }

namespace {

double gauss_tail_integral(double c, double from) {
    // 2 * int_from^inf e^{-c t^2} dt = sqrt(pi/c) erfc(sqrt(c) from)
    return std::sqrt(M_PI / c) * std::erfc(std::sqrt(c) * from);
}

struct NodeSweep {
    long double sum = 0.0L;      // h * sum Re(phi_hat e^{-i t x})
    long double abs_sum = 0.0L;  // h * sum |phi_hat|
    long double dropped = 0.0L;  // integral-unit budget charged for dropped nodes
    int dropped_count = 0;

    NodeSweep operator+(const NodeSweep& o) const {
        return {sum + o.sum, abs_sum + o.abs_sum, dropped + o.dropped,
                dropped_count + o.dropped_count};
    }
};

// Evaluates the plan nodes; parallel over fixed blocks with ordered reduction,
// so parallel and serial results agree bit for bit.  Region-violating nodes on
// small instances are filled from the exact coefficients; on large ones they
// are dropped and charged the calibrated bound exp(-c_cal lambda n theta^2).
NodeSweep evaluate_plan_nodes(const Graph& g, const FourierPlan& plan,
                              const std::complex<double>& log_z0, const CountingConfig& cfg,
                              par::Mode mode) {
    const int M = plan.node_count;
    const double lambda_n = plan.lambda * g.vertex_count();
    auto exact_poly = exact_coefficients(g);
    auto map_block = [&](std::size_t lo, std::size_t hi, std::size_t) {
        NodeSweep acc;
        for (std::size_t l = lo; l < hi; ++l) {
            const double t = -plan.gamma + (static_cast<double>(l) + 0.5) * plan.h;
            const double theta = t / plan.sigma_hat;
            const std::complex<double> target =
                plan.lambda * std::exp(std::complex<double>(0.0, theta));
            std::complex<double> phi;
            try {
                LogEvaluation num = log_evaluate_region(g, target, plan.eps_node, cfg.delta,
                                                        plan.lambda);
                const std::complex<double> phase(0.0, -t * plan.mu_hat / plan.sigma_hat);
                phi = std::exp(num.log_value - log_z0 + phase);
            } catch (const region_error&) {
                if (exact_poly) {
                    const std::complex<double> raw =
                        characteristic_function(*exact_poly, plan.lambda, theta);
                    const std::complex<double> phase(0.0, -t * plan.mu_hat / plan.sigma_hat);
                    phi = raw * std::exp(phase);
                } else {
                    acc.dropped += static_cast<long double>(plan.h) *
                                   std::exp(-plan.c_cal * lambda_n * theta * theta);
                    acc.dropped_count += 1;
                    continue;
                }
            }
            const std::complex<double> e(std::cos(t * plan.x_hat), -std::sin(t * plan.x_hat));
            acc.sum += static_cast<long double>(plan.h) * (phi * e).real();
            acc.abs_sum += static_cast<long double>(plan.h) * std::abs(phi);
        }
        return acc;
    };
    return par::map_reduce_blocks<NodeSweep>(static_cast<std::size_t>(M), 64, NodeSweep{},
                                             map_block, std::plus<>{}, mode);
}

bool small_k_path_applies(const Graph& g, int k) {
    const double threshold = std::exp(-5.0) * g.vertex_count() / (g.max_degree() + 1.0);
    return k < threshold && k <= kClusterGuardDefault;
}

CountEstimate fptas_count_impl(const Graph& g, int k, double eps, const CountingConfig& cfg,
                               par::Mode mode, int k_cap) {
    const int n = g.vertex_count();
    if (k < 1 || k > k_cap)
        throw precondition_error("k = " + std::to_string(k) + " outside the valid range 1.." +
                                 std::to_string(k_cap));
    if (eps <= 0 || eps >= 1) throw precondition_error("eps must lie in (0,1)");

    if (small_k_path_applies(g, k)) {
        mpz_class exact = small_k_exact_count(g, k);
        CountEstimate est;
        long e2 = 0;
        double mant = mpz_get_d_2exp(&e2, exact.get_mpz_t());
        est.log_value = std::log(mant) + e2 * 0.6931471805599453;
        est.rel_err = 0.0;
        est.method = "exact-small-k";
        return est;
    }

    FugacityBracket bracket = find_fugacity_deterministic(g, k, cfg);
    const double lambda = bracket.lambda;
    Moments m = plan_moments(g, lambda, cfg);

    FourierPlan plan;
    plan.lambda = lambda;
    plan.mu_hat = m.mu;
    plan.sigma_hat = m.sigma;
    plan.mu_err = m.mu_err;
    plan.sigma2_err = m.var_err;
    plan.x_hat = (k - m.mu) / m.sigma;
    // High-phase decay constant: fitted on this instance when exact
    // coefficients exist, otherwise the calibrated default.
    plan.c_cal = cfg.c_cal;
    if (auto poly = exact_coefficients(g)) {
        const double fit = fourier_profile(*poly, lambda, n, {}).fitted_c;
        if (fit > 0) plan.c_cal = 0.9 * fit;
    }

    double eps_node = eps / 24.0;
    double gamma = std::min(M_PI * m.sigma * (1.0 - 1e-9),
                            cfg.fourier_constant * std::sqrt(std::max(1.0, std::log(1.0 / eps))));
    const double i_ref = std::sqrt(2.0 * M_PI) * std::exp(-plan.x_hat * plan.x_hat / 2.0);
    const double lambda_n = lambda * n;

    for (int round = 0; round < 5; ++round) {
        plan.gamma = gamma;
        plan.eps_node = eps_node;
        // High-phase tail beyond gamma: calibrated decay bound in phase units,
        // plain measure bound for the last sliver before pi sigma (the lattice
        // inversion is exact there and |integrand| <= 1).
        plan.budget_tail =
            std::min(gauss_tail_integral(plan.c_cal * lambda_n / (m.sigma * m.sigma), gamma),
                     2.0 * std::max(0.0, M_PI * m.sigma - gamma));
        // Mesh from the first-derivative bound of the integrand.
        const double deriv_bound = 2.2 + std::abs(plan.x_hat);
        double h = (eps / 12.0) * i_ref * 2.0 / (gamma * deriv_bound);
        int M = static_cast<int>(std::ceil(2.0 * gamma / h));
        M = std::min(M, 400000);
        plan.h = 2.0 * gamma / M;
        plan.node_count = M;
        plan.budget_disc = plan.h * gamma * deriv_bound / 2.0;

        LogEvaluation den = log_evaluate_region(g, lambda, eps_node, cfg.delta, lambda);
        NodeSweep sweep = evaluate_plan_nodes(g, plan, den.log_value, cfg, mode);
        const double S = static_cast<double>(sweep.sum);
        if (S <= 0) {
            eps_node /= 4.0;
            gamma = std::min(M_PI * m.sigma * (1.0 - 1e-9), gamma * 1.3);
            continue;
        }
        // Certified envelope of P_hat = S / (2 pi sigma_hat).
        const double node_err = 2.0 * eps_node * static_cast<double>(sweep.abs_sum);
        const double total_I =
            plan.budget_tail + plan.budget_disc + static_cast<double>(sweep.dropped) + node_err;
        const double rel_p = total_I / S;
        const double rel_total = rel_p + den.err + 1e-9;
        if (rel_total <= eps) {
            CountEstimate est;
            est.log_value = -k * std::log(lambda) + den.log_value.real() +
                            std::log(S / (2.0 * M_PI * m.sigma));
            est.rel_err = rel_total;
            est.lambda = lambda;
            est.sigma_hat = m.sigma;
            est.plan_nodes = plan.node_count;
            est.dropped_nodes = sweep.dropped_count;
            est.c_cal_used = plan.c_cal;
            est.method = "fptas";
            return est;
        }
        // Tighten whichever budget dominates.
        if (plan.budget_tail > total_I / 3.0 && gamma < M_PI * m.sigma * (1.0 - 1e-6))
            gamma = std::min(M_PI * m.sigma * (1.0 - 1e-9), gamma * 1.5);
        else if (node_err > total_I / 3.0)
            eps_node /= 4.0;
        else
            eps_node /= 2.0; // also shrinks the reported slack on the next pass
    }
    // The high-phase mass of a small instance can sit outside every certified
    // region; in that regime exhaustive enumeration is the sanctioned answer.
    if (n <= kExactGuardDefault) {
        IntPolynomial poly = independence_polynomial(g);
        if (k > poly.degree())
            throw precondition_error("k exceeds the independence number");
        CountEstimate est;
        long e2 = 0;
        double mant = mpz_get_d_2exp(&e2, poly.coeffs[static_cast<std::size_t>(k)].get_mpz_t());
        est.log_value = std::log(mant) + e2 * 0.6931471805599453;
        est.rel_err = 0.0;
        est.lambda = lambda;
        est.sigma_hat = m.sigma;
        est.method = "exact-enumeration";
        return est;
    }
    throw certification_error("Fourier plan could not certify the requested eps");
}

} // namespace

CountEstimate fptas_count(const Graph& g, int k, double eps, const CountingConfig& cfg,
                          par::Mode mode) {
    return fptas_count_impl(g, k, eps, cfg, mode, max_valid_k(g, cfg.delta));
}

CountEstimate eptas_count(const Graph& g, int k, double eps, const CountingConfig& cfg) {
    const int kmax = max_valid_k(g, cfg.delta);
    if (k < 1 || k > kmax)
        throw precondition_error("k = " + std::to_string(k) + " outside the valid range 1.." +
                                 std::to_string(kmax));
    FugacityBracket bracket = find_fugacity_deterministic(g, k, cfg);
    const double lambda = bracket.lambda;
    Moments m = plan_moments(g, lambda, cfg);
    ApproxValue z = region_evaluate_Z(g, lambda, eps / 8.0, cfg.delta);
    const double x_hat = (k - m.mu) / m.sigma;
    CountEstimate est;
    est.log_value = -k * std::log(lambda) + std::log(z.value.real()) - x_hat * x_hat / 2.0 -
                    std::log(std::sqrt(2.0 * M_PI) * m.sigma);
    const double n = g.vertex_count();
    est.lclt_slack = cfg.lclt_constant * std::pow(std::log(std::max(3.0, n)), 2.5) / m.sigma2;
    est.rel_err = eps / 8.0 + m.var_err / m.sigma2;
    est.lambda = lambda;
    est.sigma_hat = m.sigma;
    est.method = "eptas";
    return est;
}

CountEstimate count_matchings(const Graph& g, int k, double eps, const CountingConfig& cfg,
                              par::Mode mode) {
    const int mstar = max_matching(g);
    if (k < 1 || k > mstar)
        throw precondition_error("k = " + std::to_string(k) + " outside 1..m* = 1.." +
                                 std::to_string(mstar));
    Graph lg = line_graph(g);
    CountEstimate est = fptas_count_impl(lg, k, eps, cfg, mode, mstar);
    est.method = "fptas-matchings";
    return est;
}

mpz_class small_k_exact_count(const Graph& g, int k) {
    if (k < 0 || k > kClusterGuardDefault)
        throw precondition_error("small-k exact path guarded at k <= " +
                                 std::to_string(kClusterGuardDefault));
    if (k == 0) return 1;
    // i_k = [lambda^k] exp(sum_j c_j lambda^j), exact rationals throughout.
    auto cs = log_z_cluster_coefficients(g, k);
    std::vector<mpq_class> b(static_cast<std::size_t>(k) + 1);
    b[0] = 1;
    for (int m = 1; m <= k; ++m) {
        mpq_class acc = 0;
        for (int j = 1; j <= m; ++j)
            acc += mpq_class(j) * cs[static_cast<std::size_t>(j - 1)] * b[static_cast<std::size_t>(m - j)];
        acc /= m;
        acc.canonicalize();
        b[static_cast<std::size_t>(m)] = acc;
    }
    mpq_class res = b[static_cast<std::size_t>(k)];
    res.canonicalize();
    if (res.get_den() != 1)
        throw certification_error("small-k coefficient extraction produced a non-integer");
    return res.get_num();
}

} // namespace hardcount
