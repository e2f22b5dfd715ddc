// Benchmark comparing the serial reference kernels against the OpenMP ones.
// Kernels keep a fixed block decomposition with an ordered reduction, so both
// modes produce identical results; the checksum column demonstrates that.

#include <chrono>
#include <cstdio>
#include <functional>

#include "hardcount/cluster.hpp"
#include "hardcount/counting.hpp"
#include "hardcount/generate.hpp"
#include "hardcount/lclt.hpp"
#include "hardcount/parallel.hpp"
#include "hardcount/rng.hpp"
#include "hardcount/sampling.hpp"

using namespace hardcount;
using clock_type = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn) {
    auto t0 = clock_type::now();
    fn();
    auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double omp_ms, double check_serial,
         double check_omp) {
    std::printf("%-28s %10.1f ms %10.1f ms %7.2fx   %s\n", name, serial_ms, omp_ms,
                serial_ms / omp_ms, check_serial == check_omp ? "match" : "MISMATCH");
}

} // namespace

int main() {
    std::printf("%-28s %13s %13s %9s   %s\n", "kernel", "serial", "openmp", "speedup",
                "checksum");

    {
        Graph g = make_random_regular(20, 3, 7);
        double cs = 0, co = 0;
        double ts = time_ms([&] {
            auto v = log_z_cluster_coefficients(g, 8, par::Mode::serial);
            cs = mpq_get_d(v.back().get_mpq_t());
        });
        double to = time_ms([&] {
            auto v = log_z_cluster_coefficients(g, 8, par::Mode::openmp);
            co = mpq_get_d(v.back().get_mpq_t());
        });
        row("cluster aggregation t=8", ts, to, cs, co);
    }

    {
        Graph g = make_cycle(160);
        double cs = 0, co = 0;
        double ts = time_ms([&] { cs = fptas_count(g, 30, 0.05, {}, par::Mode::serial).log_value; });
        double to = time_ms([&] { co = fptas_count(g, 30, 0.05, {}, par::Mode::openmp).log_value; });
        row("fourier plan C160 k=30", ts, to, cs, co);
    }

    {
        std::vector<int> sizes{100, 200, 300, 400};
        double cs = 0, co = 0;
        double ts = time_ms([&] { cs = cycle_sweep(sizes, 1.0, par::Mode::serial).back().sup_error; });
        double to = time_ms([&] { co = cycle_sweep(sizes, 1.0, par::Mode::openmp).back().sup_error; });
        row("lclt cycle sweep", ts, to, cs, co);
    }

    {
        Graph g = make_cycle(64);
        double cs = 0, co = 0;
        double ts = time_ms([&] {
            Rng rng(11);
            cs = fpras_count(g, 8, 0.2, rng, {}, par::Mode::serial).log_value;
        });
        double to = time_ms([&] {
            Rng rng(11);
            co = fpras_count(g, 8, 0.2, rng, {}, par::Mode::openmp).log_value;
        });
        row("fpras glauber trials", ts, to, cs, co);
    }

    return 0;
}
