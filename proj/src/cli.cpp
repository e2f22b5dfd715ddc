#include "hardcount/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardcount/cluster.hpp"
#include "hardcount/counting.hpp"
#include "hardcount/exact.hpp"
#include "hardcount/generate.hpp"
#include "hardcount/io.hpp"
#include "hardcount/lclt.hpp"
#include "hardcount/region.hpp"
#include "hardcount/sampling.hpp"

namespace hardcount {

namespace {

using nlohmann::json;

struct GraphSource {
    std::string file;
    std::string spec;

    Graph load(std::uint64_t seed) const {
        if (!file.empty()) return load_graph_file(file);
        if (!spec.empty()) return generate_from_spec(spec, seed);
        throw precondition_error("no graph given: use --graph FILE or --generate SPEC");
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--graph", file, "graph file (edge list or JSON)");
        cmd->add_option("--generate", spec, "generator spec, e.g. cycle:12 or random_regular:16,3");
    }
};

json base_output(std::uint64_t seed, const CountingConfig& cfg) {
    json j;
    j["version"] = kVersion;
    j["seed"] = seed;
    j["config"]["delta"] = cfg.delta;
    j["config"]["grid_constant"] = cfg.grid_constant;
    j["config"]["fourier_constant"] = cfg.fourier_constant;
    j["config"]["c_cal"] = cfg.c_cal;
    return j;
}

std::string region_kind_name(RegionKind k) {
    switch (k) {
        case RegionKind::shearer_disk: return "shearer_disk";
        case RegionKind::half_plane: return "half_plane";
        case RegionKind::real_disk: return "real_disk";
    }
    return "?";
}

json certificate_json(const EvalCertificate& c) {
    json j;
    j["region"] = region_kind_name(c.kind);
    j["heuristic_region"] = c.heuristic_region;
    j["eta"] = c.eta;
    j["truncation_order"] = c.truncation_order;
    j["tail_bound"] = c.tail_bound;
    j["region_note"] = c.region_note;
    return j;
}

std::complex<double> parse_complex(const std::string& s) {
    auto comma = s.find(',');
    try {
        if (comma == std::string::npos) return {std::stod(s), 0.0};
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw parse_error("bad complex number: " + s + " (expected re or re,im)");
    }
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"hardcount: count and sample independent sets and matchings of a given size"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags are accepted after the subcommand too

    std::uint64_t seed = 1;
    CountingConfig ccfg;
    SamplerConfig scfg;
    app.add_option("--seed", seed, "master seed for randomized commands")->capture_default_str();
    app.add_option("--delta", ccfg.delta, "margin off the critical threshold")->capture_default_str();
    app.add_option("--grid-constant", ccfg.grid_constant, "fugacity grid constant C (0 = auto)");
    app.add_option("--fourier-constant", ccfg.fourier_constant, "gamma constant");
    app.add_option("--c-cal", ccfg.c_cal, "calibrated high-phase decay constant");
    app.add_option("--sampler-c", scfg.c, "fast sampler modulus constant");
    app.add_option("--sampler-c-prime", scfg.c_prime, "fast sampler abort fraction (<0 auto)");
    app.add_option("--repeat-multiplier", scfg.repeat_multiplier, "fast sampler repeat cap multiplier");
    app.add_option("--burn-factor", scfg.burn_factor, "Glauber burn-in factor");

    // exact
    auto* cmd_exact = app.add_subcommand("exact", "exact coefficient vector (i_k or m_k)");
    GraphSource src_exact;
    src_exact.attach(cmd_exact);
    bool exact_matchings = false;
    int exact_guard = kExactGuardDefault;
    cmd_exact->add_flag("--matchings", exact_matchings, "matching counts via the line graph");
    cmd_exact->add_option("--guard", exact_guard, "size guard for the branching recursion");

    // cluster
    auto* cmd_cluster = app.add_subcommand("cluster", "truncated cluster expansion, CSV per order");
    GraphSource src_cluster;
    src_cluster.attach(cmd_cluster);
    double cl_lambda = 0.05;
    int cl_t = 6;
    cmd_cluster->add_option("--lambda", cl_lambda, "fugacity")->capture_default_str();
    cmd_cluster->add_option("--t", cl_t, "truncation order")->capture_default_str();

    // evaluate
    auto* cmd_eval = app.add_subcommand("evaluate", "partition function at a complex fugacity");
    GraphSource src_eval;
    src_eval.attach(cmd_eval);
    std::string ev_lambda = "0.1";
    double ev_eps = 1e-3;
    cmd_eval->add_option("--lambda", ev_lambda, "fugacity as re or re,im")->capture_default_str();
    cmd_eval->add_option("--eps", ev_eps, "relative accuracy")->capture_default_str();

    // cumulants
    auto* cmd_cum = app.add_subcommand("cumulants", "certified cumulants of the size law");
    GraphSource src_cum;
    src_cum.attach(cmd_cum);
    double cu_lambda = 0.5, cu_eps = 0.01;
    int cu_kmax = 4;
    cmd_cum->add_option("--lambda", cu_lambda, "fugacity")->capture_default_str();
    cmd_cum->add_option("--eps", cu_eps, "additive accuracy eps*lambda*n")->capture_default_str();
    cmd_cum->add_option("--k-max", cu_kmax, "highest cumulant order (<= 4)")->capture_default_str();

    // count
    auto* cmd_count = app.add_subcommand("count", "deterministic approximation of i_k or m_k");
    GraphSource src_count;
    src_count.attach(cmd_count);
    int ct_k = 1;
    double ct_eps = 0.05;
    bool ct_matchings = false;
    std::string ct_method = "fptas";
    cmd_count->add_option("--k", ct_k, "target size")->required();
    cmd_count->add_option("--eps", ct_eps, "relative accuracy")->capture_default_str();
    cmd_count->add_flag("--matchings", ct_matchings, "count matchings instead of independent sets");
    cmd_count->add_option("--method", ct_method, "fptas or eptas")->capture_default_str();

    // sample
    auto* cmd_sample = app.add_subcommand("sample", "near-uniform size-k sets");
    GraphSource src_sample;
    src_sample.attach(cmd_sample);
    int sm_k = 1, sm_count = 1;
    double sm_eps = 0.05;
    std::string sm_method = "fast";
    long long sm_max_tries = 1000000;
    bool sm_matchings = false;
    cmd_sample->add_option("--k", sm_k, "target size")->required();
    cmd_sample->add_option("--eps", sm_eps, "TV accuracy")->capture_default_str();
    cmd_sample->add_option("--method", sm_method, "downup, rejection, or fast")->capture_default_str();
    cmd_sample->add_option("--count", sm_count, "number of samples")->capture_default_str();
    cmd_sample->add_option("--max-tries", sm_max_tries, "rejection budget per sample");
    cmd_sample->add_flag("--matchings", sm_matchings, "sample matchings instead");

    // fpras
    auto* cmd_fpras = app.add_subcommand("fpras", "randomized approximation of i_k");
    GraphSource src_fpras;
    src_fpras.attach(cmd_fpras);
    int fp_k = 1;
    double fp_eps = 0.1;
    cmd_fpras->add_option("--k", fp_k, "target size")->required();
    cmd_fpras->add_option("--eps", fp_eps, "relative accuracy")->capture_default_str();

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "evidence sweeps (CSV)");
    std::string vf_sizes = "100,200,400,800";
    double vf_lambda = 1.0;
    bool vf_low_phase = false;
    cmd_verify->add_option("--sizes", vf_sizes, "cycle sizes")->capture_default_str();
    cmd_verify->add_option("--lambda", vf_lambda, "fugacity")->capture_default_str();
    cmd_verify->add_flag("--low-phase", vf_low_phase,
                         "also record the low-phase gap profile for the largest size");

    // generate
    auto* cmd_gen = app.add_subcommand("generate", "emit a generated graph as an edge list");
    std::string gen_spec;
    cmd_gen->add_option("--spec", gen_spec, "kind:params, e.g. cycle:12")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            std::ostringstream help;
            int rc = app.exit(e, help, help);
            out << help.str();
            return rc;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (cmd_exact->parsed()) {
        Graph g = src_exact.load(seed);
        IntPolynomial p = exact_matchings ? matching_counts(g, exact_guard)
                                          : independence_polynomial(g, exact_guard);
        json j = base_output(seed, ccfg);
        json arr = json::array();
        for (const auto& c : p.coeffs) arr.push_back(c.get_str());
        j["coefficients"] = arr;
        j["n"] = g.vertex_count();
        j["max_degree"] = g.max_degree();
        j["kind"] = exact_matchings ? "matchings" : "independent_sets";
        out << j.dump() << "\n";
        return 0;
    }

    if (cmd_cluster->parsed()) {
        Graph g = src_cluster.load(seed);
        ClusterSum s = truncated_log_Z(g, cl_lambda, cl_t);
        out << "order,contribution,cumulative,kp_bound\n";
        char buf[160];
        for (const auto& oc : s.per_order) {
            std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g\n", oc.order, oc.contribution,
                          oc.cumulative, oc.kp_bound);
            out << buf;
        }
        return 0;
    }

    if (cmd_eval->parsed()) {
        Graph g = src_eval.load(seed);
        std::complex<double> lambda = parse_complex(ev_lambda);
        json j = base_output(seed, ccfg);
        LogEvaluation le = log_evaluate_region(g, lambda, ev_eps, ccfg.delta,
                                               std::abs(lambda));
        std::complex<double> value = std::exp(le.log_value);
        j["lambda"] = {lambda.real(), lambda.imag()};
        j["eps"] = ev_eps;
        j["n"] = g.vertex_count();
        j["max_degree"] = g.max_degree();
        j["value"] = {value.real(), value.imag()};
        j["log_value"] = {le.log_value.real(), le.log_value.imag()};
        j["rel_err"] = le.err;
        j["add_err"] = 0.0;
        j["certificate"] = certificate_json(le.cert);
        out << j.dump() << "\n";
        return 0;
    }

    if (cmd_cum->parsed()) {
        Graph g = src_cum.load(seed);
        if (cu_kmax < 1 || cu_kmax > 4) throw precondition_error("--k-max must lie in 1..4");
        json j = base_output(seed, ccfg);
        j["lambda"] = cu_lambda;
        j["eps"] = cu_eps;
        j["n"] = g.vertex_count();
        j["max_degree"] = g.max_degree();
        json arr = json::array();
        for (int k = 1; k <= cu_kmax; ++k) {
            auto est = cumulant_via_interpolation(g, cu_lambda, k, cu_eps, ccfg.delta);
            json e;
            e["k"] = k;
            e["value"] = est.value;
            e["add_err"] = est.add_err;
            e["via_cluster"] = est.via_cluster;
            e["certificate"] = certificate_json(est.cert);
            arr.push_back(e);
        }
        j["cumulants"] = arr;
        out << j.dump() << "\n";
        return 0;
    }

    if (cmd_count->parsed()) {
        Graph g = src_count.load(seed);
        CountEstimate est;
        if (ct_matchings) est = count_matchings(g, ct_k, ct_eps, ccfg);
        else if (ct_method == "eptas") est = eptas_count(g, ct_k, ct_eps, ccfg);
        else est = fptas_count(g, ct_k, ct_eps, ccfg);
        json j = base_output(seed, ccfg);
        j["k"] = ct_k;
        j["eps"] = ct_eps;
        j["n"] = g.vertex_count();
        j["max_degree"] = g.max_degree();
        j["estimate"] = est.decimal();
        j["log_estimate"] = est.log_value;
        j["certified_rel_err"] = est.rel_err;
        j["lclt_slack"] = est.lclt_slack;
        j["lambda"] = est.lambda;
        j["sigma_hat"] = est.sigma_hat;
        j["plan"]["nodes"] = est.plan_nodes;
        j["plan"]["dropped_nodes"] = est.dropped_nodes;
        j["plan"]["c_cal_used"] = est.c_cal_used;
        j["method"] = est.method;
        out << j.dump() << "\n";
        return 0;
    }

    if (cmd_sample->parsed()) {
        Graph g = src_sample.load(seed);
        Rng rng(seed);
        json footer = base_output(seed, ccfg);
        footer["k"] = sm_k;
        footer["eps"] = sm_eps;
        footer["method"] = sm_method;
        footer["rng"] = Rng::name();
        auto emit = [&](const std::vector<int>& set) {
            for (std::size_t i = 0; i < set.size(); ++i)
                out << set[i] << (i + 1 < set.size() ? ' ' : '\n');
            if (set.empty()) out << '\n';
        };
        if (sm_matchings) {
            for (int i = 0; i < sm_count; ++i) {
                auto m = sample_matching_k(g, sm_k, sm_eps, rng, scfg);
                for (std::size_t e = 0; e < m.size(); ++e)
                    out << m[e].first << '-' << m[e].second << (e + 1 < m.size() ? ' ' : '\n');
            }
        } else if (sm_method == "downup") {
            const int kmax = max_valid_k(g, scfg.delta);
            if (sm_k < 1 || sm_k > kmax)
                throw precondition_error("k outside the valid range 1.." + std::to_string(kmax));
            const long long burn = default_burn_in(g.vertex_count(), sm_eps);
            for (int i = 0; i < sm_count; ++i) {
                DownUpChain chain(g, greedy_independent_set(g, sm_k));
                chain.run(burn, rng);
                emit(chain.sorted_members());
            }
        } else if (sm_method == "rejection") {
            double lambda = find_fugacity_randomized(g, sm_k, sm_eps, rng, scfg);
            long long total_tries = 0;
            for (int i = 0; i < sm_count; ++i) {
                auto r = rejection_sample_k(g, lambda, sm_k, rng, sm_max_tries, scfg);
                total_tries += r.tries;
                if (!r.set) throw budget_error("rejection sampler exhausted max tries");
                emit(*r.set);
            }
            footer["lambda"] = lambda;
            footer["tries"] = total_tries;
        } else if (sm_method == "fast") {
            FastSampler sampler(g, sm_k, sm_eps, rng, scfg);
            for (int i = 0; i < sm_count; ++i) emit(sampler.sample(rng));
            const auto& d = sampler.diagnostics();
            footer["lambda"] = d.lambda;
            footer["p"] = d.p;
            footer["separated_size"] = d.separated_size;
            footer["repeat_cap"] = d.repeat_cap;
            footer["attempts"] = d.attempts;
            footer["aborts_small_sstar"] = d.aborts_small_sstar;
            footer["fallback_to_greedy"] = d.fallback_to_greedy;
            footer["clamped_acceptance"] = d.clamped_acceptance;
        } else {
            throw precondition_error("unknown sampling method: " + sm_method);
        }
        out << footer.dump() << "\n";
        return 0;
    }

    if (cmd_fpras->parsed()) {
        Graph g = src_fpras.load(seed);
        Rng rng(seed);
        FprasResult r = fpras_count(g, fp_k, fp_eps, rng, scfg);
        json j = base_output(seed, ccfg);
        j["k"] = fp_k;
        j["eps"] = fp_eps;
        j["n"] = g.vertex_count();
        j["max_degree"] = g.max_degree();
        j["lambda"] = r.lambda;
        j["estimate"] = r.decimal();
        j["log_estimate"] = r.log_value;
        j["p_hat"] = r.p_hat;
        j["samples"] = r.samples;
        j["branch"] = r.branch;
        j["rng"] = Rng::name();
        out << j.dump() << "\n";
        return 0;
    }

    if (cmd_verify->parsed()) {
        auto sizes = parse_int_list(vf_sizes);
        auto reports = cycle_sweep(sizes, vf_lambda);
        out << reports_to_csv(reports);
        if (vf_low_phase && !sizes.empty()) {
            const int n = *std::max_element(sizes.begin(), sizes.end());
            std::vector<double> grid;
            for (int i = 1; i <= 16; ++i) grid.push_back(0.25 * i);
            auto rows = low_phase_profile(cycle_polynomial_transfer(n), vf_lambda, grid);
            out << "t,gap_times_sigma\n";
            char buf[80];
            for (const auto& r : rows) {
                std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", r.t, r.gap_times_sigma);
                out << buf;
            }
        }
        return 0;
    }

    if (cmd_gen->parsed()) {
        Graph g = generate_from_spec(gen_spec, seed);
        out << serialize_graph(g);
        return 0;
    }

    err << "error: no subcommand\n";
    return 2;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        return run(argc, argv, out, err);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const precondition_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const certification_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace hardcount
