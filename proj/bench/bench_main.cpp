// Times the OpenMP kernels against their serial reference twins and checks
// that both produce identical results.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "slantpath/analysis.hpp"
#include "slantpath/scenario.hpp"

using namespace slantpath;

namespace {

double seconds_of(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

bool same_table(const SweepTable& a, const SweepTable& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        if (a.rows[i].transmittance != b.rows[i].transmittance) return false;
    }
    return true;
}

void print_row(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-28s %10.3f ms %10.3f ms %7.2fx  %s\n", name, serial_s * 1e3,
                parallel_s * 1e3, serial_s / parallel_s,
                identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run serially\n");
#endif
    std::printf("%-28s %13s %13s %8s\n", "kernel", "serial", "parallel", "speedup");

    const AtmosphereProfile rainy = builtin_scenario(1).profile;

    {
        const std::uint64_t n = 2'000'000;
        MonteCarloStats serial_stats, parallel_stats;
        const double ts = seconds_of(
            [&] { serial_stats = monte_carlo_reference(rainy, 10.0, n, 7); });
        const double tp =
            seconds_of([&] { parallel_stats = monte_carlo(rainy, 10.0, n, 7); });
        const bool same =
            serial_stats.mean_transmittance == parallel_stats.mean_transmittance &&
            serial_stats.geometric_mean_transmittance ==
                parallel_stats.geometric_mean_transmittance &&
            serial_stats.p50 == parallel_stats.p50;
        print_row("monte_carlo (2e6 samples)", ts, tp, same);
    }

    {
        std::vector<double> grid;
        grid.reserve(850001);
        for (double z = 0.0; z <= 85.0; z += 0.0001) grid.push_back(z);
        SweepTable serial_table, parallel_table;
        const double ts =
            seconds_of([&] { serial_table = sweep_zenith_reference(rainy, grid); });
        const double tp = seconds_of([&] { parallel_table = sweep_zenith(rainy, grid); });
        print_row("sweep_zenith (850k points)", ts, tp,
                  same_table(serial_table, parallel_table));
    }

    {
        std::vector<double> grid;
        grid.reserve(110001);
        for (double nm = 500.0; nm <= 1600.0; nm += 0.01) grid.push_back(nm);
        SweepTable serial_table, parallel_table;
        const double ts = seconds_of(
            [&] { serial_table = sweep_wavelength_reference(rainy, grid, 10.0); });
        const double tp =
            seconds_of([&] { parallel_table = sweep_wavelength(rainy, grid, 10.0); });
        print_row("sweep_wavelength (110k pts)", ts, tp,
                  same_table(serial_table, parallel_table));
    }

    return 0;
}
