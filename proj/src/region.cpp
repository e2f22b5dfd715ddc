#include "hardcount/region.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "hardcount/cluster.hpp"

namespace hardcount {

namespace {

constexpr double kSafetyMargin = 0.02;   // declared regions shrink by this factor
constexpr double kMaxEta = 0.9995;       // refuse maps with essentially no gap
constexpr int kMaxTruncationOrder = 500000;

long double mpz_to_ld(const mpz_class& z) {
    long e2 = 0;
    double mant = mpz_get_d_2exp(&e2, z.get_mpz_t());
    return static_cast<long double>(mant) * std::pow(2.0L, static_cast<long double>(e2));
}

} // namespace

double shearer_radius(int max_degree) {
    if (max_degree <= 1) return 1.0;
    return std::pow(max_degree - 1.0, max_degree - 1.0) / std::pow(max_degree, max_degree);
}

bool ZeroFreeRegion::contains(std::complex<double> z) const {
    switch (kind) {
        case RegionKind::shearer_disk: return std::abs(z) < radius;
        case RegionKind::half_plane: return z.real() > min_re;
        case RegionKind::real_disk: return std::abs(z - std::complex<double>(center, 0.0)) < disk_radius;
    }
    return false;
}

std::string ZeroFreeRegion::describe() const {
    std::ostringstream os;
    switch (kind) {
        case RegionKind::shearer_disk:
            os << "shearer_disk radius " << radius;
            break;
        case RegionKind::half_plane:
            os << "half_plane Re > " << min_re;
            break;
        case RegionKind::real_disk:
            os << "real_disk center " << center << " radius " << disk_radius << " (heuristic)";
            break;
    }
    return os.str();
}

void RegionMap::check_containment() {
    const double rho = (1.0 / eta) * (1.0 - 1e-9);
    for (int i = 0; i < sample_count; ++i) {
        const double th = 2.0 * M_PI * i / sample_count;
        std::complex<double> y = rho * std::complex<double>(std::cos(th), std::sin(th));
        std::complex<double> z = map(y);
        if (!region.contains(z)) {
            std::ostringstream os;
            os << "containment check failed at boundary point y = (" << y.real() << ", " << y.imag()
               << "), f(y) = (" << z.real() << ", " << z.imag() << ") outside " << region.describe();
            throw certification_error(os.str());
        }
    }
    sampled_image_check = true;
}

namespace {

RegionMap shearer_map(int max_degree, std::complex<double> target) {
    RegionMap m;
    m.target = target;
    m.d1 = 0.0;
    m.region.kind = RegionKind::shearer_disk;
    m.region.radius = shearer_radius(max_degree);
    m.eta = std::abs(target) / m.region.radius;
    if (m.eta <= 0.0) m.eta = 1e-12;
    return m;
}

RegionMap half_plane_map(int max_degree, std::complex<double> target) {
    RegionMap m;
    m.target = target;
    m.region.kind = RegionKind::half_plane;
    const double m_cf = (1.0 - kSafetyMargin) / (std::exp(1.0) * (max_degree + 1));
    m.region.min_re = -m_cf;
    std::complex<double> w = target / (target + 2.0 * m_cf);
    if (std::abs(w) >= kMaxEta) {
        std::ostringstream os;
        os << "target (" << target.real() << ", " << target.imag()
           << ") too close to the half-plane boundary Re = " << -m_cf;
        throw region_error(os.str());
    }
    m.d1 = -w;
    m.eta = std::abs(w);
    return m;
}

RegionMap real_disk_map(int max_degree, std::complex<double> target, double lambda_scale) {
    RegionMap m;
    m.target = target;
    m.region.kind = RegionKind::real_disk;
    m.region.heuristic = true;
    const double rs = shearer_radius(max_degree);
    const double d_neg = std::min(0.8 * rs, 0.12);
    const double d_pos = std::max(0.3, 0.25 * lambda_scale);
    const double xc = (lambda_scale + d_pos - d_neg) / 2.0;
    const double R = (lambda_scale + d_pos + d_neg) / 2.0;
    m.region.center = xc;
    m.region.disk_radius = R;
    const double a = -xc / R;
    std::complex<double> b = (target - xc) / R;
    if (std::abs(b) >= kMaxEta)
        throw region_error("target outside the declared real-axis disk");
    std::complex<double> w = (b - a) / (1.0 - a * b);
    if (std::abs(w) >= kMaxEta)
        throw region_error("interpolation gap too small for the declared real-axis disk");
    m.d1 = a * w;
    m.eta = std::abs(w);
    if (m.eta < 1e-12) m.eta = 1e-12;
    return m;
}

} // namespace

RegionMap build_region_map_to(int max_degree, double delta, std::complex<double> target,
                              bool claw_free, double lambda_scale) {
    (void)delta;
    const double rs = shearer_radius(max_degree);
    RegionMap m;
    if (std::abs(target) < (1.0 - kSafetyMargin) * rs) {
        m = shearer_map(max_degree, target);
    } else if (claw_free) {
        m = half_plane_map(max_degree, target);
    } else {
        if (lambda_scale <= 0.0) lambda_scale = std::abs(target);
        m = real_disk_map(max_degree, target, lambda_scale);
    }
    m.check_containment();
    return m;
}

RegionMap build_region_map(int max_degree, double delta, double lambda_target, bool claw_free) {
    if (lambda_target <= 0.0) throw precondition_error("region map needs lambda > 0");
    if (!claw_free && max_degree >= 3) {
        const double lc = mpq_get_d(critical_fugacity(max_degree).get_mpq_t());
        if (lambda_target > (1.0 - delta) * lc)
            throw precondition_error("lambda exceeds (1-delta) lambda_c");
    }
    return build_region_map_to(max_degree, delta, lambda_target, claw_free, lambda_target);
}

namespace {

std::uint64_t graph_signature(const Graph& g) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    mix(static_cast<std::uint64_t>(g.vertex_count()));
    for (auto [u, v] : g.edges()) {
        mix(static_cast<std::uint64_t>(u));
        mix(static_cast<std::uint64_t>(v));
    }
    return h;
}

// Coefficient sources are pure functions of the graph; cache them so a Fourier
// plan's node sweep does not recompute transfer recurrences per node.
std::mutex g_cache_mutex;
std::unordered_map<std::uint64_t, std::shared_ptr<const std::optional<IntPolynomial>>> g_poly_cache;
std::unordered_map<std::uint64_t, std::shared_ptr<const std::vector<mpq_class>>> g_cluster_cache;

std::shared_ptr<const std::optional<IntPolynomial>> cached_exact_coefficients(const Graph& g);
std::shared_ptr<const std::vector<mpq_class>> cached_cluster_coefficients(const Graph& g, int t);

} // namespace

static std::optional<IntPolynomial> exact_coefficients_uncached(const Graph& g) {
    if (g.vertex_count() <= kExactGuardDefault) return independence_polynomial(g);
    if (g.max_degree() > 2) return std::nullopt;
    // Max degree <= 2: componentwise transfer recurrences, convolved.
    const int n = g.vertex_count();
    std::vector<char> vis(static_cast<std::size_t>(n), 0);
    IntPolynomial acc;
    acc.coeffs = {mpz_class(1)};
    for (int v = 0; v < n; ++v) {
        if (vis[static_cast<std::size_t>(v)]) continue;
        std::vector<int> comp;
        std::deque<int> q{v};
        vis[static_cast<std::size_t>(v)] = 1;
        int ends = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            comp.push_back(u);
            ends += g.degree(u);
            for (int w : g.neighbors(u))
                if (!vis[static_cast<std::size_t>(w)]) {
                    vis[static_cast<std::size_t>(w)] = 1;
                    q.push_back(w);
                }
        }
        const int sz = static_cast<int>(comp.size());
        IntPolynomial part = (ends / 2 == sz) ? cycle_polynomial_transfer(sz)
                                              : path_polynomial_transfer(sz);
        IntPolynomial next;
        next.coeffs.assign(acc.coeffs.size() + part.coeffs.size() - 1, mpz_class(0));
        for (std::size_t i = 0; i < acc.coeffs.size(); ++i)
            for (std::size_t j = 0; j < part.coeffs.size(); ++j)
                next.coeffs[i + j] += acc.coeffs[i] * part.coeffs[j];
        acc = std::move(next);
    }
    return acc;
}

namespace {

std::shared_ptr<const std::optional<IntPolynomial>> cached_exact_coefficients(const Graph& g) {
    const std::uint64_t sig = graph_signature(g);
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_poly_cache.find(sig);
        if (it != g_poly_cache.end()) return it->second;
    }
    auto value = std::make_shared<const std::optional<IntPolynomial>>(exact_coefficients_uncached(g));
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto [it, inserted] = g_poly_cache.emplace(sig, value);
    return it->second;
}

std::shared_ptr<const std::vector<mpq_class>> cached_cluster_coefficients(const Graph& g, int t) {
    const std::uint64_t sig = graph_signature(g) * 1000003ULL + static_cast<std::uint64_t>(t);
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cluster_cache.find(sig);
        if (it != g_cluster_cache.end()) return it->second;
    }
    auto value = std::make_shared<const std::vector<mpq_class>>(
        log_z_cluster_coefficients(g, t, par::Mode::serial));
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto [it, inserted] = g_cluster_cache.emplace(sig, value);
    return it->second;
}

// Integer power sums of the inverse roots of Z, cached per (graph, order
// rounded up to a power of two): the per-node assembly for the scaling map
// reads these exactly, with no float Newton anywhere.
std::unordered_map<std::uint64_t, std::shared_ptr<const std::vector<mpz_class>>> g_psum_cache;

std::shared_ptr<const std::vector<mpz_class>> cached_power_sums(const Graph& g,
                                                                const IntPolynomial& poly, int t) {
    int t_ceil = 16;
    while (t_ceil < t) t_ceil *= 2;
    const std::uint64_t sig = graph_signature(g) * 1000033ULL + static_cast<std::uint64_t>(t_ceil);
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_psum_cache.find(sig);
        if (it != g_psum_cache.end()) return it->second;
    }
    auto value = std::make_shared<const std::vector<mpz_class>>(
        inverse_root_power_sums(poly, t_ceil));
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto [it, inserted] = g_psum_cache.emplace(sig, value);
    return it->second;
}

} // namespace

std::optional<IntPolynomial> exact_coefficients(const Graph& g) {
    return *cached_exact_coefficients(g);
}

LogZTaylor log_z_taylor(const Graph& g, int t) {
    LogZTaylor out;
    out.order = t;
    if (t <= kClusterGuardDefault) {
        out.coeffs = log_z_cluster_coefficients(g, t);
        return out;
    }
    auto poly = exact_coefficients(g);
    if (!poly)
        throw certification_error("log Z Taylor order " + std::to_string(t) +
                                  " exceeds the cluster guard and no exact coefficient source applies");
    auto ps = inverse_root_power_sums(*poly, t);
    out.coeffs.reserve(static_cast<std::size_t>(t));
    for (int m = 1; m <= t; ++m) {
        mpq_class c(-ps[static_cast<std::size_t>(m - 1)], mpz_class(m));
        c.canonicalize();
        out.coeffs.push_back(c);
    }
    return out;
}

namespace {

struct LogSeries {
    std::vector<std::complex<long double>> a; // a[m-1] = order-m coefficient of log Z(f(y))
    double coeff_bound = 0.0;                 // |a_m| <= coeff_bound eta^m / m
    double eta = 0.0;
};

// Tail of sum_{m>t} coeff_bound eta^m / m * falling(m, j) with falling(m,0)=1.
// j = 0 gives the log tail itself.  Summed until the remainder (bounded by a
// geometric majorant) is negligible relative to the accumulated value.
double series_tail(const LogSeries& s, int t, int j) {
    const long double eta = s.eta;
    long double acc = 0.0L;
    long double em = std::pow(eta, t + 1);
    for (long long m = t + 1; m < t + 2000000; ++m) {
        long double fall = 1.0L;
        for (int r = 0; r < j; ++r) fall *= static_cast<long double>(m - r);
        long double term = em / static_cast<long double>(m) * fall;
        acc += term;
        em *= eta;
        if (acc > 1e300L) return std::numeric_limits<double>::infinity();
        if (m > t + 8 && m > 4LL * (j + 1)) {
            // Terms beyond m shrink at least like eta (1 + j/m)^j <= eta e^{j^2/m};
            // close out with the geometric majorant once it is negligible.
            const long double ratio = eta * std::exp(static_cast<long double>(j) * j / m);
            if (ratio < 1.0L) {
                const long double rest = term * ratio / (1.0L - ratio);
                if (rest < 1e-18L * acc + 1e-320L) {
                    acc += rest;
                    break;
                }
            }
            if (term < 1e-320L) break;
        }
    }
    return static_cast<double>(static_cast<long double>(s.coeff_bound) * acc);
}

// Moebius-Newton in long double loses roughly 2 log10 C(N, N/2) digits to
// cancellation; keep it for small polynomials only.
constexpr int kNewtonDegreeCap = 48;

LogSeries build_log_series(const Graph& g, const RegionMap& map, int t) {
    LogSeries s;
    s.eta = map.eta;
    auto poly_ptr = cached_exact_coefficients(g);
    const std::optional<IntPolynomial>& poly = *poly_ptr;
    if (poly && std::abs(map.d1) == 0.0) {
        // Scaling map: a_m = -p_m target^m / m with exact integer power sums.
        const int N = poly->degree();
        auto ps = cached_power_sums(g, *poly, t);
        s.a.resize(static_cast<std::size_t>(t));
        const std::complex<long double> tgt(map.target.real(), map.target.imag());
        std::complex<long double> zm = 1.0L;
        for (int m = 1; m <= t; ++m) {
            zm *= tgt;
            s.a[static_cast<std::size_t>(m - 1)] =
                -mpz_to_ld((*ps)[static_cast<std::size_t>(m - 1)]) * zm /
                static_cast<long double>(m);
        }
        s.coeff_bound = 2.0 * std::max(1, N);
        return s;
    }
    if (poly && poly->degree() <= kNewtonDegreeCap) {
        const int N = poly->degree();
        const std::complex<long double> d1(map.d1.real(), map.d1.imag());
        const std::complex<long double> tgt(map.target.real(), map.target.imag());
        const std::complex<long double> u1 = tgt * (1.0L + d1);
        // chat_j = [y^j] Z(f(y)) (1+d1 y)^N = sum_k i_k u1^k C(N-k, j-k) d1^{j-k}
        std::vector<std::complex<long double>> chat(static_cast<std::size_t>(N) + 1, 0.0L);
        std::complex<long double> u1k = 1.0L;
        for (int k = 0; k <= N; ++k) {
            std::complex<long double> term = mpz_to_ld(poly->coeffs[static_cast<std::size_t>(k)]) * u1k;
            for (int j = k; j <= N; ++j) {
                chat[static_cast<std::size_t>(j)] += term;
                term *= d1 * (static_cast<long double>(N - j) / static_cast<long double>(j - k + 1));
            }
            u1k *= u1;
        }
        // Newton power sums of the inverse roots of the degree-N polynomial chat.
        std::vector<std::complex<long double>> ps(static_cast<std::size_t>(t), 0.0L);
        for (int m = 1; m <= t; ++m) {
            std::complex<long double> acc = 0.0L;
            if (m <= N) acc = -static_cast<long double>(m) * chat[static_cast<std::size_t>(m)];
            const int jmax = std::min(m - 1, N);
            for (int j = 1; j <= jmax; ++j)
                acc -= chat[static_cast<std::size_t>(j)] * ps[static_cast<std::size_t>(m - j - 1)];
            ps[static_cast<std::size_t>(m - 1)] = acc;
        }
        s.a.resize(static_cast<std::size_t>(t));
        std::complex<long double> md1m = 1.0L; // (-d1)^m
        for (int m = 1; m <= t; ++m) {
            md1m *= -d1;
            s.a[static_cast<std::size_t>(m - 1)] =
                (static_cast<long double>(N) * md1m - ps[static_cast<std::size_t>(m - 1)]) /
                static_cast<long double>(m);
        }
        s.coeff_bound = 2.0 * N;
        return s;
    }
    // Cluster source: only valid for the pure scaling map f(y) = target y.
    if (std::abs(map.d1) != 0.0)
        throw certification_error(
            "no stable coefficient source for this target: interpolation beyond the Shearer disk "
            "needs degree <= " + std::to_string(kNewtonDegreeCap) + " or max degree <= 2");
    if (t > kClusterGuardDefault)
        throw certification_error("requested accuracy needs " + std::to_string(t) +
                                  " series orders; cluster enumeration is guarded at " +
                                  std::to_string(kClusterGuardDefault));
    auto cs = cached_cluster_coefficients(g, t);
    s.a.resize(static_cast<std::size_t>(t));
    const std::complex<long double> tgt(map.target.real(), map.target.imag());
    std::complex<long double> zm = 1.0L;
    for (int m = 1; m <= t; ++m) {
        zm *= tgt;
        s.a[static_cast<std::size_t>(m - 1)] =
            static_cast<long double>(mpq_get_d((*cs)[static_cast<std::size_t>(m - 1)].get_mpq_t())) * zm;
    }
    s.coeff_bound = g.vertex_count();
    return s;
}

// Component structure of a max-degree-<=2 graph: (size, is_cycle) pairs.
// Cached per graph; the closed-form evaluator runs per Fourier node.
std::unordered_map<std::uint64_t, std::shared_ptr<const std::vector<std::pair<int, bool>>>>
    g_comp_cache;

std::shared_ptr<const std::vector<std::pair<int, bool>>> cached_components(const Graph& g) {
    const std::uint64_t sig = graph_signature(g) * 1000211ULL;
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_comp_cache.find(sig);
        if (it != g_comp_cache.end()) return it->second;
    }
    std::vector<std::pair<int, bool>> comps;
    const int n = g.vertex_count();
    std::vector<char> vis(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        if (vis[static_cast<std::size_t>(v)]) continue;
        int size = 0, ends = 0;
        std::deque<int> q{v};
        vis[static_cast<std::size_t>(v)] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            ++size;
            ends += g.degree(u);
            for (int w : g.neighbors(u))
                if (!vis[static_cast<std::size_t>(w)]) {
                    vis[static_cast<std::size_t>(w)] = 1;
                    q.push_back(w);
                }
        }
        comps.emplace_back(size, ends / 2 == size);
    }
    auto value = std::make_shared<const std::vector<std::pair<int, bool>>>(std::move(comps));
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto [it, inserted] = g_comp_cache.emplace(sig, value);
    return it->second;
}

// Closed-form log Z for max-degree-<=2 graphs at any complex z off the
// transfer branch point: per component, with eigenvalues (1 +- sqrt(1+4z))/2.
std::complex<long double> transfer_log_evaluate(const Graph& g, std::complex<double> z_in) {
    const std::complex<long double> z(z_in.real(), z_in.imag());
    const std::complex<long double> disc = 1.0L + 4.0L * z;
    if (std::abs(disc) < 1e-12)
        throw region_error("evaluation point at the transfer branch point z = -1/4");
    const std::complex<long double> d = std::sqrt(disc);
    const std::complex<long double> fp = (1.0L + d) / 2.0L;
    const std::complex<long double> fm = -z / fp; // (1-d)/2 without cancellation
    const std::complex<long double> ratio = fm / fp;
    const std::complex<long double> logfp = std::log(fp);

    auto comps = cached_components(g);
    std::complex<long double> acc = 0.0L;
    for (auto [size, is_cycle] : *comps) {
        auto pow_ratio = [&](int e) { return std::pow(ratio, static_cast<long double>(e)); };
        if (is_cycle) {
            // Cycle: Z = fp^s + fm^s.
            acc += static_cast<long double>(size) * logfp + std::log(1.0L + pow_ratio(size));
        } else {
            // Path: Z = (fp^{s+2} - fm^{s+2}) / (fp - fm).
            acc += static_cast<long double>(size + 2) * logfp +
                   std::log(1.0L - pow_ratio(size + 2)) - std::log(d);
        }
    }
    return acc;
}

int pick_truncation_order(double coeff_bound, double eta, double target_err, int j = 0) {
    // Smallest t with coeff_bound * sum_{m>t} eta^m m^{j} / m <= target_err,
    // searched with the cheap closed-form bound first.
    LogSeries probe;
    probe.coeff_bound = coeff_bound;
    probe.eta = eta;
    int lo = 1, hi = 1;
    while (hi < kMaxTruncationOrder && series_tail(probe, hi, j) > target_err) hi *= 2;
    if (series_tail(probe, hi, j) > target_err)
        throw certification_error("truncation order above " + std::to_string(kMaxTruncationOrder) +
                                  "; requested accuracy unreachable (eta = " + std::to_string(eta) + ")");
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (series_tail(probe, mid, j) <= target_err) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

} // namespace

LogEvaluation log_evaluate_region(const Graph& g, std::complex<double> target, double eps,
                                  double delta, double lambda_scale) {
    if (eps <= 0) throw precondition_error("eps must be positive");
    if (!g.claw_free_hint() && g.max_degree() >= 3) {
        const double lc = mpq_get_d(critical_fugacity(g.max_degree()).get_mpq_t());
        if (std::abs(target) > (1.0 - delta) * lc)
            throw precondition_error("target modulus " + std::to_string(std::abs(target)) +
                                     " exceeds (1-delta) lambda_c = " +
                                     std::to_string((1.0 - delta) * lc));
    }

    // Max-degree-<=2 instances beyond the Shearer disk: exact componentwise
    // transfer form (no truncation, no dropped high-phase nodes).  The series
    // routes still cover these graphs inside the disk and every exact-source
    // graph of higher degree.
    const bool shearer_ok =
        std::abs(target) < (1.0 - kSafetyMargin) * shearer_radius(g.max_degree());
    if (!shearer_ok && g.max_degree() <= 2) {
        auto lv = transfer_log_evaluate(g, target);
        LogEvaluation out;
        out.log_value = {static_cast<double>(lv.real()), static_cast<double>(lv.imag())};
        out.err = 1e-12 * std::max(1.0, std::abs(out.log_value)) + 1e-12;
        out.cert.kind = RegionKind::half_plane;
        out.cert.eta = 0.0;
        out.cert.truncation_order = 0;
        out.cert.tail_bound = 0.0;
        out.cert.region_note = "componentwise transfer closed form (exact)";
        return out;
    }

    RegionMap map = build_region_map_to(g.max_degree(), delta, target, g.claw_free_hint(),
                                        lambda_scale);
    // Approximate coefficient bound (2N for the exact route, n for cluster).
    double cb = 2.0 * std::max(1, g.vertex_count());
    int t = pick_truncation_order(cb, map.eta, eps / 2.0);
    LogSeries s = build_log_series(g, map, t);
    double tail = series_tail(s, t, 0);
    std::complex<long double> sum = 0.0L;
    for (int m = t; m >= 1; --m) sum += s.a[static_cast<std::size_t>(m - 1)];
    LogEvaluation out;
    out.log_value = {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
    out.err = tail + 1e-10;
    out.cert.kind = map.region.kind;
    out.cert.heuristic_region = map.region.heuristic;
    out.cert.eta = map.eta;
    out.cert.truncation_order = t;
    out.cert.tail_bound = tail;
    out.cert.region_note = map.region.describe();
    return out;
}

ApproxValue disk_evaluate_Z(const Graph& g, std::complex<double> lambda, double eps, double delta) {
    const double rs = shearer_radius(g.max_degree());
    if (std::abs(lambda) > (1.0 - delta) * rs)
        throw precondition_error("lambda outside the certified Shearer disk: |lambda| = " +
                                 std::to_string(std::abs(lambda)) + " > (1-delta) * " +
                                 std::to_string(rs));
    if (std::abs(lambda) == 0.0) return {std::complex<double>(1.0, 0.0), 0.0, 0.0};
    LogEvaluation le = log_evaluate_region(g, lambda, eps, delta, std::abs(lambda));
    ApproxValue av;
    av.value = std::exp(std::complex<double>(le.log_value));
    av.rel_err = le.err;
    return av;
}

ApproxValue region_evaluate_Z(const Graph& g, double lambda, double eps, double delta) {
    if (lambda <= 0) throw precondition_error("region evaluation needs lambda > 0");
    if (!g.claw_free_hint() && g.max_degree() >= 3) {
        const double lc = mpq_get_d(critical_fugacity(g.max_degree()).get_mpq_t());
        if (lambda > (1.0 - delta) * lc)
            throw precondition_error("lambda = " + std::to_string(lambda) + " exceeds (1-delta) lambda_c = " +
                                     std::to_string((1.0 - delta) * lc));
    }
    LogEvaluation le = log_evaluate_region(g, lambda, eps, delta, lambda);
    ApproxValue av;
    av.value = std::exp(le.log_value.real());
    av.rel_err = le.err;
    return av;
}

namespace {

// Chain-rule combination: derivatives of log Z in lambda from derivatives of
// log Zhat in y and the map's derivatives at y = 1.
struct ChainContext {
    std::array<std::complex<long double>, 5> F{}; // F[j] = f^(j)(1), j = 1..4

    explicit ChainContext(const RegionMap& map) {
        const std::complex<long double> d1(map.d1.real(), map.d1.imag());
        const std::complex<long double> tgt(map.target.real(), map.target.imag());
        const std::complex<long double> u1 = tgt * (1.0L + d1);
        const std::complex<long double> den = 1.0L + d1;
        F[1] = u1 / (den * den);
        F[2] = -2.0L * u1 * d1 / (den * den * den);
        F[3] = 6.0L * u1 * d1 * d1 / (den * den * den * den);
        F[4] = -24.0L * u1 * d1 * d1 * d1 / (den * den * den * den * den);
    }

    // b[j][i]: L_j = sum_i b[j][i] D_i (chain rule through the inverse map).
    std::array<std::array<std::complex<long double>, 5>, 5> chain_coefficients() const {
        std::array<std::array<std::complex<long double>, 5>, 5> b{};
        const auto F1 = F[1], F2 = F[2], F3 = F[3], F4 = F[4];
        auto p = [&](const std::complex<long double>& x, int k) {
            std::complex<long double> r = 1.0L;
            for (int i = 0; i < k; ++i) r *= x;
            return r;
        };
        b[1][1] = 1.0L / F1;
        b[2][2] = 1.0L / p(F1, 2);
        b[2][1] = -F2 / p(F1, 3);
        b[3][3] = 1.0L / p(F1, 3);
        b[3][2] = -3.0L * F2 / p(F1, 4);
        b[3][1] = 3.0L * F2 * F2 / p(F1, 5) - F3 / p(F1, 4);
        b[4][4] = 1.0L / p(F1, 4);
        b[4][3] = -6.0L * F2 / p(F1, 5);
        b[4][2] = 15.0L * F2 * F2 / p(F1, 6) - 4.0L * F3 / p(F1, 5);
        b[4][1] = 10.0L * F2 * F3 / p(F1, 6) - 15.0L * F2 * F2 * F2 / p(F1, 7) - F4 / p(F1, 5);
        return b;
    }
};

// Stirling numbers of the second kind for kappa_k = sum_j S(k,j) lambda^j L_j.
constexpr int kStirling[5][5] = {
    {0, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 1, 1, 0, 0}, {0, 1, 3, 1, 0}, {0, 1, 7, 6, 1}};

} // namespace

CumulantEstimate cumulant_via_interpolation(const Graph& g, double lambda, int k, double eps,
                                            double delta) {
    if (k < 1 || k > 4) throw precondition_error("cumulants supported for k in 1..4");
    if (lambda <= 0) throw precondition_error("cumulant needs lambda > 0");
    const long long n = g.vertex_count();
    const double target_err = eps * lambda * static_cast<double>(n);

    // Large max-degree-<=2 instances always have exact transfer coefficients;
    // they beat any truncated route, so take them first.
    if (g.max_degree() <= 2 && n > kExactGuardDefault) {
        auto poly_ptr = cached_exact_coefficients(g);
        const SizeDistribution dist = size_distribution(**poly_ptr, lambda);
        CumulantEstimate est;
        est.value = k == 1   ? dist.mean
                    : k == 2 ? dist.variance
                    : k == 3 ? dist.kappa3
                             : dist.kappa4;
        est.add_err = 1e-9 * std::max(1.0, std::abs(est.value));
        est.cert.kind = RegionKind::half_plane;
        est.cert.region_note = "exact transfer coefficients";
        return est;
    }

    // Small-lambda branch: cluster truncation, taken only when the KP-certified
    // order is enumeration-feasible.
    const double x = lambda * std::exp(1.0) * (g.max_degree() + 1);
    if (x < 1.0 - delta) {
        bool feasible = false;
        int t_cluster = 0;
        try {
            t_cluster = select_truncation_order(lambda, g.max_degree(), eps, n, k);
            feasible = t_cluster <= kClusterGuardDefault;
        } catch (const certification_error&) {
            feasible = false;
        }
        if (feasible) {
            ClusterSum cs = truncated_cumulant(g, lambda, k, t_cluster);
            CumulantEstimate est;
            est.value = cs.value;
            est.add_err = cs.kp_tail_bound;
            est.via_cluster = true;
            est.cert.kind = RegionKind::shearer_disk;
            est.cert.truncation_order = t_cluster;
            est.cert.tail_bound = cs.kp_tail_bound;
            est.cert.region_note = "cluster expansion, KP-certified";
            return est;
        }
    }

    if (!g.claw_free_hint() && g.max_degree() >= 3) {
        const double lc = mpq_get_d(critical_fugacity(g.max_degree()).get_mpq_t());
        if (lambda > (1.0 - delta) * lc)
            throw precondition_error("lambda exceeds (1-delta) lambda_c");
    }

    // Beyond the Shearer disk, max-degree-<=2 instances use the exact transfer
    // coefficients directly.
    if (g.max_degree() <= 2 &&
        lambda >= (1.0 - kSafetyMargin) * shearer_radius(g.max_degree())) {
        auto poly_ptr = cached_exact_coefficients(g);
        const SizeDistribution dist = size_distribution(**poly_ptr, lambda);
        CumulantEstimate est;
        est.value = k == 1   ? dist.mean
                    : k == 2 ? dist.variance
                    : k == 3 ? dist.kappa3
                             : dist.kappa4;
        est.add_err = 1e-9 * std::max(1.0, std::abs(est.value));
        est.cert.kind = RegionKind::half_plane;
        est.cert.region_note = "exact transfer coefficients";
        return est;
    }

    RegionMap map = build_region_map_to(g.max_degree(), delta, lambda, g.claw_free_hint(), lambda);
    ChainContext chain(map);
    auto b = chain.chain_coefficients();

    // Error propagated from the D_i tails through |b[j][i]| and the Stirling
    // combination; find the smallest order meeting the target.
    const double cb = 2.0 * std::max(1, g.vertex_count());
    auto kappa_err_at = [&](int t) {
        LogSeries probe;
        probe.coeff_bound = cb;
        probe.eta = map.eta;
        double tails[5];
        for (int i = 1; i <= k; ++i) tails[i] = series_tail(probe, t, i);
        double err = 0.0;
        for (int j = 1; j <= k; ++j) {
            double lj_err = 0.0;
            for (int i = 1; i <= j; ++i)
                lj_err += static_cast<double>(std::abs(b[j][i])) * tails[i];
            err += kStirling[k][j] * std::pow(lambda, j) * lj_err;
        }
        return err;
    };
    int lo = 1, hi = 1;
    while (hi < kMaxTruncationOrder && kappa_err_at(hi) > target_err / 2.0) hi *= 2;
    if (kappa_err_at(hi) > target_err / 2.0)
        throw certification_error("cumulant truncation order above the cap (eta = " +
                                  std::to_string(map.eta) + ")");
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (kappa_err_at(mid) <= target_err / 2.0) hi = mid;
        else lo = mid + 1;
    }
    const int t = lo;

    LogSeries s = build_log_series(g, map, t);
    // D_j = sum_{m=j}^t a_m m!/(m-j)!  (derivatives of log Zhat at y=1).
    std::array<std::complex<long double>, 5> D{};
    for (int j = 1; j <= k; ++j) {
        std::complex<long double> acc = 0.0L;
        for (int m = t; m >= j; --m) {
            long double fall = 1.0L;
            for (int r = 0; r < j; ++r) fall *= static_cast<long double>(m - r);
            acc += s.a[static_cast<std::size_t>(m - 1)] * fall;
        }
        D[static_cast<std::size_t>(j)] = acc;
    }
    std::array<std::complex<long double>, 5> L{};
    for (int j = 1; j <= k; ++j) {
        std::complex<long double> acc = 0.0L;
        for (int i = 1; i <= j; ++i) acc += b[j][i] * D[static_cast<std::size_t>(i)];
        L[static_cast<std::size_t>(j)] = acc;
    }
    std::complex<long double> kappa = 0.0L;
    long double lp = 1.0L;
    for (int j = 1; j <= k; ++j) {
        lp *= static_cast<long double>(lambda);
        kappa += static_cast<long double>(kStirling[k][j]) * lp * L[static_cast<std::size_t>(j)];
    }

    CumulantEstimate est;
    est.value = static_cast<double>(kappa.real());
    est.add_err = kappa_err_at(t) + 1e-9 * std::max(1.0, std::abs(est.value));
    est.via_cluster = false;
    est.cert.kind = map.region.kind;
    est.cert.heuristic_region = map.region.heuristic;
    est.cert.eta = map.eta;
    est.cert.truncation_order = t;
    est.cert.tail_bound = kappa_err_at(t);
    est.cert.region_note = map.region.describe();
    return est;
}

MeanVariance mean_variance(const Graph& g, double lambda, double eps, double delta) {
    auto k1 = cumulant_via_interpolation(g, lambda, 1, eps, delta);
    auto k2 = cumulant_via_interpolation(g, lambda, 2, eps, delta);
    return {k1.value, k2.value, k1.add_err, k2.add_err};
}

int max_valid_k(const Graph& g, double delta) {
    const int n = g.vertex_count();
    if (g.claw_free_hint()) {
        // Claw-free route: any k up to the independence number is accepted
        // (the fugacity cap keeps the search finite near the top).
        if (g.max_degree() <= 2) return independence_number_deg2(g);
        if (n <= kExactGuardDefault) return independence_polynomial(g).degree();
        throw precondition_error("cannot compute the independence number of a large claw-free graph");
    }
    const double ac = mpq_get_d(critical_density(std::max(3, g.max_degree())).get_mpq_t());
    return static_cast<int>(std::floor((1.0 - delta) * ac * n + 1e-12));
}

} // namespace hardcount
