// Benchmark: serial reference vs OpenMP kernels for the two hot loops,
// the Monte Carlo trial kernel and the exact-MGF enumeration.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "netlearn/model.hpp"
#include "netlearn/simulator.hpp"
#include "netlearn/weighting.hpp"

using namespace netlearn;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_s(F&& fn) {
    const auto start = Clock::now();
    fn();
    return std::chrono::duration<double>(Clock::now() - start).count();
}

GenerativeModel coin_model(int k) {
    GenerativeModel m;
    for (int i = 0; i < k; ++i)
        m.features.push_back(DiscreteFeatures{{{{0.0}, 0.5}, {{1.0}, 0.5}}});
    m.label = LinearLabel{std::vector<double>(k, 0.3), DiscreteNoise{{{-0.1, 0.5}, {0.1, 0.5}}}};
    return m;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif

    // Trial kernel: 12-edge random overlap instance, 2e5 redraws.
    {
        const auto g = make_random(3, 12, {5, 5, 5}, 0.4, 11);
        const auto model = coin_model(3);
        const StatisticSpec xi = SquaredErrorStatistic{{0.1, 0.1, 0.1}, 0.0};
        const auto w = optimal_weighting(g).weighting;
        const auto mom = statistic_moments(xi, model);
        std::vector<double> grid;
        for (int i = 0; i < 10; ++i) grid.push_back(0.05 + 0.05 * i);
        const long trials = 200000;

        std::vector<long> serial_counts, parallel_counts;
        const double t_serial = time_s([&] {
            serial_counts = concentration_exceedance_counts(g, model, xi, w, mom.mean, grid,
                                                            trials, 1, Exec::Serial);
        });
        const double t_parallel = time_s([&] {
            parallel_counts = concentration_exceedance_counts(g, model, xi, w, mom.mean, grid,
                                                              trials, 1, Exec::Parallel);
        });
        std::printf("trial kernel      %ld trials   serial %.3f s   parallel %.3f s   "
                    "speedup %.2fx   counts %s\n",
                    trials, t_serial, t_parallel, t_serial / t_parallel,
                    serial_counts == parallel_counts ? "identical" : "DIFFER");
    }

    // Enumeration kernel: 4^10 ~ 1e6 configurations.
    {
        KPartiteHypergraph g = make_random(2, 10, {5, 5}, 0.0, 3);
        GenerativeModel model;
        DiscreteFeatures four;
        for (int a = 0; a < 4; ++a) four.atoms.push_back({{0.25 * a}, 0.25});
        model.features = {four, four};
        model.label = LinearLabel{{0.2, 0.2}, NoNoise{}};
        const StatisticSpec xi = AffineStatistic{{0.3, -0.3}, 0.5, 0.0};
        const auto w = optimal_weighting(g).weighting.weights;

        MgfCheck serial, parallel;
        const double t_serial =
            time_s([&] { serial = exact_mgf_check(g, model, xi, w, Exec::Serial); });
        const double t_parallel =
            time_s([&] { parallel = exact_mgf_check(g, model, xi, w, Exec::Parallel); });
        std::printf("mgf enumeration   %ld configs  serial %.3f s   parallel %.3f s   "
                    "speedup %.2fx   lhs %s\n",
                    serial.configurations, t_serial, t_parallel, t_serial / t_parallel,
                    serial.lhs == parallel.lhs ? "identical" : "DIFFER");
    }
    return 0;
}
