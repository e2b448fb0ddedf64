// Timing harness comparing the OpenMP kernels against their serial
// reference implementations, plus end-to-end step throughput.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kdv/fdsolver.hpp"
#include "kdv/kernel.hpp"
#include "kdv/sim.hpp"
#include "kdv/volterra.hpp"

using namespace kdv;

namespace {

double seconds(const std::function<void()>& fn, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

GridFunction random_state(int points, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    GridFunction u(points, StateKind::generic);
    for (int j = 0; j < points; ++j) u[j] = dist(rng);
    return u;
}

void row(const char* name, double serial, double parallel) {
    std::printf("  %-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial * 1e3, parallel * 1e3,
                serial / parallel);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run the same serial code\n");
#endif

    const KernelSet ks = make_kernel_set(0.01, 0.01, 6.283185307179586, 10);

    for (const int J : {200, 800, 3200}) {
        const Grid grid(ks.length, J);
        std::printf("J = %d\n", J);
        std::printf("  %-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

        const int reps = J <= 800 ? 20 : 5;
        const VolterraOp op(ks.k, grid);
        const GridFunction u = random_state(grid.points(), 42);

        {
            volatile double sink = 0.0;
            const double ts = seconds([&] { sink = sink + op.apply_serial(u)[J / 2]; }, reps * 5);
            const double tp = seconds([&] { sink = sink + op.apply(u)[J / 2]; }, reps * 5);
            row("volterra apply", ts, tp);
        }
        {
            // Succession inverse runs m applications of the parallel kernel.
            const GridFunction w = op.apply(u);
            volatile double sink = 0.0;
            const double t = seconds([&] { sink = sink + op.invert_succession(w, 10)[J / 2]; }, reps);
            std::printf("  %-28s %23.3f ms  (m_iter = 10)\n", "succession inverse", t * 1e3);
            const double td = seconds([&] { sink = sink + op.invert_direct(w)[J / 2]; }, reps * 5);
            std::printf("  %-28s %23.3f ms  (sequential rows)\n", "direct inverse", td * 1e3);
        }
        {
            const double t = seconds([&] { VolterraOp rebuilt(ks.k, grid); (void)rebuilt; }, reps);
            std::printf("  %-28s %23.3f ms  (parallel rows)\n", "operator build", t * 1e3);
        }
    }

    {
        std::printf("kernel residual sampling (400x400 triangle)\n");
        std::printf("  %-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");
        volatile double sink = 0.0;
        const double ts = seconds([&] { sink = sink + kernel_residual_serial(ks, 400).pde; }, 3);
        const double tp = seconds([&] { sink = sink + kernel_residual(ks, 400).pde; }, 3);
        row("residual sampling", ts, tp);
    }

    {
        SimConfig cfg;
        cfg.t_final = 2.0;
        const auto t0 = std::chrono::steady_clock::now();
        const DecayReport rep = run(cfg);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                                .count();
        std::printf("full pipeline, J = %d: %ld steps in %.2f s (%.0f steps/s)\n",
                    cfg.grid_points, std::lround(cfg.t_final / cfg.dt), wall,
                    (cfg.t_final / cfg.dt) / wall);
        (void)rep;
    }
    return 0;
}
