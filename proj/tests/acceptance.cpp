// Acceptance suite: one self-contained criterion per block, one PASS/FAIL
// line each, nonzero exit when any criterion fails. Each criterion carries
// a wall-clock budget that is enforced alongside the numeric checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kdv/fdsolver.hpp"
#include "kdv/grid.hpp"
#include "kdv/kernel.hpp"
#include "kdv/sim.hpp"
#include "kdv/volterra.hpp"

using namespace kdv;

namespace {

constexpr double kTwoPi = 6.283185307179586;

struct Checker {
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void note(const std::string& what) { notes.push_back(what); }
};

int g_failed = 0;

void criterion(int id, const std::string& name, double budget_s,
               const std::function<void(Checker&)>& body) {
    Checker c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed >= budget_s) {
        std::ostringstream ss;
        ss << "runtime " << elapsed << " s exceeds budget " << budget_s << " s";
        c.failures.push_back(ss.str());
    }
    const bool ok = c.failures.empty();
    if (!ok) ++g_failed;
    std::printf("%s [%2d] %s (%.2f s, budget %.0f s)\n", ok ? "PASS" : "FAIL", id,
                name.c_str(), elapsed, budget_s);
    for (const std::string& n : c.notes) std::printf("         note: %s\n", n.c_str());
    for (const std::string& f : c.failures) std::printf("         fail: %s\n", f.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

GridFunction random_state(const Grid& grid, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    GridFunction u(grid.points(), StateKind::generic);
    for (int j = 0; j < grid.points(); ++j) u[j] = dist(rng);
    return u;
}

double rel_l2_diff(const GridFunction& a, const GridFunction& b, double dx) {
    std::vector<double> diff(a.size());
    for (int j = 0; j < a.size(); ++j) diff[j] = a[j] - b[j];
    const double scale = discrete_l2(a.values, dx);
    return scale == 0.0 ? discrete_l2(diff, dx) : discrete_l2(diff, dx) / scale;
}

// Non-increase over the tail half of a recorded series, with slack.
bool eventually_decreasing(const std::vector<double>& v) {
    const size_t start = v.size() / 2;
    for (size_t i = start + 1; i < v.size(); ++i)
        if (v[i] > v[i - 1] * (1.0 + 1e-9)) return false;
    return true;
}

SimConfig reference_config() {
    SimConfig c;  // defaults are the critical-length stabilization setup
    return c;
}

}  // namespace

int main() {
    std::printf("acceptance suite: L = 2*pi, lambda = lambda~ = 0.01 unless stated\n");

    criterion(1, "two-iteration kernel solve matches the hand triple integral", 1.0,
              [](Checker& c) {
                  const double lambda = 0.01;
                  const PicardSolve s = solve_kernel(lambda, kTwoPi, 2);
                  const BiPoly expected =
                      BiPoly::monomial(1, 1, lambda / 3.0) +
                      BiPoly::monomial(3, 1, -lambda / 54.0) +
                      BiPoly::monomial(3, 2, -lambda * lambda / 108.0);
                  const double diff = (s.g - expected).max_abs_coeff();
                  c.note("max coefficient difference " + fmt(diff));
                  c.require(diff <= 1e-14, "coefficientwise difference " + fmt(diff) +
                                               " exceeds 1e-14");
              });

    criterion(2, "kernel boundary identities vanish as polynomials", 5.0, [](Checker& c) {
        const double lambda = 0.01;
        const KernelSet ks = make_kernel_set(lambda, lambda, kTwoPi, 10);
        const auto check_zero = [&](const Poly1& p, const char* what) {
            const double m = p.max_abs_coeff();
            c.require(m <= 1e-12, std::string(what) + " has max coefficient " + fmt(m));
        };
        check_zero(ks.k.diagonal(), "k(x,x)");
        check_zero(ks.k.at_v2(0.0), "k(x,0)");
        check_zero(ks.p.at_v1(kTwoPi), "p(L,y)");
        check_zero(ks.p.diagonal(), "p(x,x)");
        check_zero(ks.k_x.diagonal() - Poly1::monomial(1, lambda / 3.0),
                   "k_x(x,x) - (lambda/3)x");
    });

    criterion(3, "kernel pde residual decreases over n = 1..10 and ends below 1e-8", 10.0,
              [](Checker& c) {
                  const double lambda = 0.01;
                  std::vector<double> r;
                  for (int n = 1; n <= 10; ++n) {
                      PicardSolve s = solve_kernel(lambda, kTwoPi, n);
                      r.push_back(kernel_residual(derive_kernel_set(s, lambda), 50).pde);
                  }
                  std::string seq;
                  for (const double v : r) seq += fmt(v) + " ";
                  c.note("residual sequence: " + seq);
                  for (size_t n = 1; n < r.size(); ++n) {
                      if (r[n] > r[n - 1] + 1e-15) {
                          c.require(false, "residual rises from n=" + std::to_string(n) +
                                               " (" + fmt(r[n - 1]) + ") to n=" +
                                               std::to_string(n + 1) + " (" + fmt(r[n]) +
                                               ")");
                      }
                  }
                  if (r[1] > r[0])
                      c.note("the n=1->2 rise is a provable transient: the first iterate "
                             "lacks the cubic body term, so its residual is accidentally "
                             "small (corner values lambda*L/3 vs |lambda^2 L^2/6 - "
                             "lambda*L^3/54|)");
                  c.require(r.back() < 1e-8,
                            "residual at n=10 is " + fmt(r.back()) + ", not below 1e-8");
              });

    criterion(4, "transform inversion: geometric succession decay, direct agreement", 10.0,
              [](Checker& c) {
                  const KernelSet ks = make_kernel_set(0.01, 0.01, kTwoPi, 10);
                  const Grid grid(kTwoPi, 200);
                  const VolterraOp op(ks.k, grid);
                  std::mt19937 rng(2024);

                  std::vector<GridFunction> inputs, images;
                  for (int i = 0; i < 100; ++i) {
                      inputs.push_back(random_state(grid, rng));
                      images.push_back(op.apply(inputs.back()));
                  }

                  std::vector<double> worst;
                  for (int m = 0; m <= 12; ++m) {
                      double e = 0.0;
                      for (size_t i = 0; i < inputs.size(); ++i)
                          e = std::max(e, rel_l2_diff(inputs[i],
                                                      op.invert_succession(images[i], m),
                                                      grid.dx));
                      worst.push_back(e);
                  }
                  std::string seq;
                  for (const double v : worst) seq += fmt(v) + " ";
                  c.note("max roundtrip error by m: " + seq);
                  for (size_t m = 1; m < worst.size(); ++m) {
                      if (worst[m - 1] <= 1e-13) break;
                      c.require(worst[m] <= 0.75 * worst[m - 1],
                                "roundtrip error not geometric at m=" + std::to_string(m));
                  }

                  double disagreement = 0.0;
                  for (size_t i = 0; i < inputs.size(); ++i) {
                      const GridFunction direct = op.invert_direct(images[i]);
                      const GridFunction succ = op.invert_succession(images[i], 20);
                      disagreement = std::max(disagreement,
                                              rel_l2_diff(direct, succ, grid.dx));
                  }
                  c.note("direct vs succession(20) relative disagreement " +
                         fmt(disagreement));
                  c.require(disagreement <= 1e-10,
                            "direct and succession inverses disagree by " +
                                fmt(disagreement));
              });

    criterion(5, "implicit homogeneous step never increases the discrete norm", 5.0,
              [](Checker& c) {
                  const Grid grid(kTwoPi, 50);
                  const Stepper st(grid, 1.0, 1e-3);
                  const GainTable no_gains(grid);
                  std::mt19937 rng(77);
                  double worst_growth = 0.0;
                  int violations = 0;
                  for (int rep = 0; rep < 1000; ++rep) {
                      GridFunction u(grid.points(), StateKind::error);
                      const GridFunction r = random_state(grid, rng);
                      for (int j = 1; j <= grid.intervals - 2; ++j) u[j] = r[j];
                      const GridFunction next =
                          step_error(u, no_gains, st, SimMode::uncontrolled);
                      const double before = discrete_l2(u.values, grid.dx);
                      const double after = discrete_l2(next.values, grid.dx);
                      worst_growth = std::max(worst_growth, after / before);
                      if (after > before * (1.0 + 1e-12)) ++violations;
                  }
                  c.note("worst norm ratio " + fmt(worst_growth));
                  c.require(violations == 0,
                            std::to_string(violations) + " of 1000 steps grew the norm");
              });

    criterion(6, "uncontrolled critical-length steady state, drift shrinks on refinement",
              120.0, [](Checker& c) {
                  SimConfig coarse = reference_config();
                  coarse.mode = SimMode::uncontrolled;
                  coarse.t_final = 20.0;
                  const DecayReport rc = run(coarse);
                  const double drift_c = std::abs(rc.l2_u.back() - rc.l2_u.front());
                  c.note("J=200: |l2(20) - l2(0)| = " + fmt(drift_c) + ", l2(0) = " +
                         fmt(rc.l2_u.front()));
                  c.require(rc.l2_u.back() >= 0.8 * rc.l2_u.front(),
                            "steady state lost " +
                                fmt(100.0 * (1.0 - rc.l2_u.back() / rc.l2_u.front())) +
                                "% of its norm");

                  SimConfig fine = coarse;
                  fine.grid_points = 400;
                  fine.dt = 5e-4;
                  const DecayReport rf = run(fine);
                  const double drift_f = std::abs(rf.l2_u.back() - rf.l2_u.front());
                  c.note("J=400: drift = " + fmt(drift_f) + " (ratio " +
                         fmt(drift_c / drift_f) + ")");
                  c.require(drift_c >= 1.5 * drift_f,
                            "refinement reduced drift only " + fmt(drift_c / drift_f) +
                                "x, needs 1.5x");
              });

    criterion(7, "two-controller feedback stabilizes the critical-length state", 300.0,
              [](Checker& c) {
                  SimConfig pilot = reference_config();
                  pilot.t_final = 150.0;
                  const DecayReport rp = run(pilot);
                  c.note("pilot fitted rate u = " + fmt(rp.fitted_rate_u));
                  c.require(rp.fitted_rate_u > 0.0, "pilot run shows no decay");
                  if (rp.fitted_rate_u <= 0.0) return;

                  // Extend the horizon until it covers five decay times of
                  // its own fitted rate (the early transient biases short
                  // fits), within a hard cap.
                  const double cap = 2500.0;
                  SimConfig verify = pilot;
                  verify.record_every = 100;
                  verify.t_final = std::min(std::max(150.0, 5.0 / rp.fitted_rate_u), cap);
                  DecayReport rv;
                  for (int round = 0; round < 3; ++round) {
                      rv = run(verify);
                      c.note("horizon " + fmt(verify.t_final) + ": l2_u " +
                             fmt(rv.l2_u.front()) + " -> " + fmt(rv.l2_u.back()) +
                             ", fitted u " + fmt(rv.fitted_rate_u));
                      if (rv.fitted_rate_u <= 0.0) break;
                      if (verify.t_final >= 5.0 / rv.fitted_rate_u ||
                          verify.t_final >= cap)
                          break;
                      verify.t_final =
                          std::min(1.15 * 5.0 / rv.fitted_rate_u, cap);
                  }
                  c.note("fitted rates: u " + fmt(rv.fitted_rate_u) + ", err " +
                         fmt(rv.fitted_rate_err) + ", uhat " + fmt(rv.fitted_rate_uhat));

                  c.require(rv.fitted_rate_u > 0.0, "verification run shows no decay in u");
                  c.require(rv.fitted_rate_u <= 0.0 ||
                                verify.t_final >= 5.0 / rv.fitted_rate_u,
                            "horizon shorter than five decay times");
                  c.require(rv.fitted_rate_err > 0.0, "error norm does not decay");
                  c.require(eventually_decreasing(rv.l2_err),
                            "l2_err is not eventually decreasing");
                  c.require(eventually_decreasing(rv.l2_uhat),
                            "l2_uhat is not eventually decreasing");
                  c.require(rv.l2_u.back() <= 0.5 * rv.l2_u.front(),
                            "l2_u(t_final) = " + fmt(rv.l2_u.back()) + " not below half of " +
                                fmt(rv.l2_u.front()));
                  c.require(rv.fitted_rate_err >= rv.fitted_rate_uhat,
                            "error rate below observer rate");
              });

    criterion(8, "theoretical decay constants: ordering, symmetry, first-order norm", 5.0,
              [](Checker& c) {
                  const double lambda = 0.01;
                  const Grid grid(kTwoPi, 200);
                  const KernelSet ks = make_kernel_set(lambda, lambda, kTwoPi, 10);
                  const DecayConstants d = decay_constants(ks, default_epsilon(ks), grid);
                  c.note("alpha " + fmt(d.alpha) + ", kappa " + fmt(d.kappa) + ", beta " +
                         fmt(d.beta) + ", mu " + fmt(d.mu) + ", epsilon " + fmt(d.epsilon));
                  c.require(d.alpha > d.kappa, "alpha <= kappa");
                  c.require(d.kappa > 0.0, "kappa <= 0");
                  c.require(d.beta > d.mu, "beta <= mu");

                  const double ky0 = std::sqrt(d.norm_ky0), pxL = std::sqrt(d.norm_pxL);
                  const double py0 = std::sqrt(d.norm_py0), kxL = std::sqrt(d.norm_kxL);
                  c.require(std::abs(ky0 - pxL) <= 1e-12,
                            "||k_y(.,0)|| != ||p_x(L,.)|| (diff " + fmt(ky0 - pxL) + ")");
                  c.require(std::abs(py0 - kxL) <= 1e-12,
                            "||p_y(.,0)|| != ||k_x(L,.)|| (diff " + fmt(py0 - kxL) + ")");

                  const KernelSet first = make_kernel_set(lambda, lambda, kTwoPi, 1);
                  const double norm1 = first.trace_pxL.l2_norm_sq(kTwoPi);
                  const double closed = lambda * lambda * kTwoPi * kTwoPi * kTwoPi / 27.0;
                  c.note("first-order ||p_x(L,.)||^2 = " + fmt(norm1) + ", closed form " +
                         fmt(closed));
                  c.require(std::abs(norm1 - closed) <= 1e-14,
                            "first-order trace norm off by " + fmt(norm1 - closed));
              });

    criterion(9, "single controller stabilizes no faster than two controllers", 300.0,
              [](Checker& c) {
                  SimConfig two = reference_config();
                  two.t_final = 400.0;
                  two.record_every = 50;
                  SimConfig single = two;
                  single.mode = SimMode::single_controller;

                  const DecayReport rt = run(two);
                  const DecayReport rs = run(single);
                  c.note("fitted rate u: two " + fmt(rt.fitted_rate_u) + ", single " +
                         fmt(rs.fitted_rate_u));
                  c.require(rs.fitted_rate_u > 0.0, "single-controller run does not decay");
                  c.require(rs.fitted_rate_u <= 1.1 * rt.fitted_rate_u,
                            "single-controller decay beats two controllers by more than "
                            "10%");
              });

    criterion(10, "matching observer start keeps the error at zero", 60.0, [](Checker& c) {
        SimConfig cfg = reference_config();
        cfg.uhat0 = cfg.u0;
        cfg.t_final = 20.0;
        cfg.record_every = 50;
        cfg.record_states = true;
        const DecayReport r = run(cfg);
        double worst_err = 0.0, worst_gap = 0.0;
        for (const double e : r.l2_err) worst_err = std::max(worst_err, e);
        for (const StateSnapshot& snap : r.states)
            for (size_t j = 0; j < snap.u.size(); ++j)
                worst_gap = std::max(worst_gap, std::abs(snap.u[j] - snap.uhat[j]));
        c.note("max l2_err " + fmt(worst_err) + ", max |u - uhat| " + fmt(worst_gap));
        c.require(worst_err <= 1e-12, "error norm reached " + fmt(worst_err));
        c.require(worst_gap <= 1e-10, "plant/observer gap reached " + fmt(worst_gap));
    });

    std::printf("%d of 10 criteria passed\n", 10 - g_failed);
    return g_failed == 0 ? 0 : 1;
}
