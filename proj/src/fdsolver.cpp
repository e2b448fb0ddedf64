#include "kdv/fdsolver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kdv {

Stepper::Stepper(const Grid& grid, double shift, double dt)
    : n_(grid.intervals - 2), shift_(shift), dt_(dt), dx_(grid.dx) {
    if (dt <= 0.0) throw std::invalid_argument("Stepper: dt must be positive");
    const SpatialStencil a(grid.dx);
    sub_ = dt * a.sub;
    diag_ = shift + dt * a.diag;
    sup1_ = dt * a.sup1;
    sup2_ = dt * a.sup2;
    factor();
}

void Stepper::factor() {
    rows_.assign(n_, {0.0, 0.0, 0.0, 0.0, 0.0});
    for (int r = 0; r < n_; ++r) {
        if (r > 0) rows_[r][0] = sub_;
        rows_[r][1] = diag_;
        if (r < n_ - 1) rows_[r][2] = sup1_;
        if (r < n_ - 2) rows_[r][3] = sup2_;
    }
    mult_.assign(n_ - 1, 0.0);
    swapped_.assign(n_ - 1, 0);
    for (int k = 0; k + 1 < n_; ++k) {
        if (std::abs(rows_[k + 1][0]) > std::abs(rows_[k][1])) {
            for (int t = 0; t < 4; ++t) std::swap(rows_[k][1 + t], rows_[k + 1][t]);
            swapped_[k] = 1;
        }
        if (rows_[k][1] == 0.0) throw std::runtime_error("Stepper: singular pivot");
        const double m = rows_[k + 1][0] / rows_[k][1];
        mult_[k] = m;
        rows_[k + 1][0] = 0.0;
        for (int t = 1; t <= 3; ++t) rows_[k + 1][t] -= m * rows_[k][t + 1];
    }
    if (rows_[n_ - 1][1] == 0.0) throw std::runtime_error("Stepper: singular pivot");
}

std::vector<double> Stepper::multiply(std::span<const double> x, double forced_jm1) const {
    if (static_cast<int>(x.size()) != n_)
        throw std::invalid_argument("Stepper::multiply: size mismatch");
    const auto val = [&](int i) -> double {
        if (i < 0) return 0.0;           // u_0 constraint
        if (i < n_) return x[i];
        if (i == n_) return forced_jm1;  // u_{J-1}
        return 0.0;                      // u_J constraint
    };
    std::vector<double> y(n_);
    for (int i = 0; i < n_; ++i)
        y[i] = sub_ * val(i - 1) + diag_ * x[i] + sup1_ * val(i + 1) + sup2_ * val(i + 2);
    return y;
}

std::vector<double> Stepper::solve(std::vector<double> rhs, double forced_jm1) const {
    if (static_cast<int>(rhs.size()) != n_)
        throw std::invalid_argument("Stepper::solve: size mismatch");
    if (forced_jm1 != 0.0) {
        rhs[n_ - 2] -= sup2_ * forced_jm1;
        rhs[n_ - 1] -= sup1_ * forced_jm1;
    }
    for (int k = 0; k + 1 < n_; ++k) {
        if (swapped_[k]) std::swap(rhs[k], rhs[k + 1]);
        rhs[k + 1] -= mult_[k] * rhs[k];
    }
    for (int i = n_ - 1; i >= 0; --i) {
        double acc = rhs[i];
        for (int t = 2; t <= 4; ++t) {
            const int col = i - 1 + t;
            if (col < n_) acc -= rows_[i][t] * rhs[col];
        }
        rhs[i] = acc / rows_[i][1];
    }
    return rhs;
}

std::pair<double, double> left_traces(const GridFunction& u, double dx) {
    return {u[1] / dx, (u[2] - 2.0 * u[1]) / (dx * dx)};
}

GainTable::GainTable(const Grid& grid)
    : p1(grid.points(), 0.0),
      p2(grid.points(), 0.0),
      ky0(grid.points(), 0.0),
      psi1(grid.points(), 0.0),
      psi2(grid.points(), 0.0) {}

GainTable::GainTable(const KernelSet& ks, const Grid& grid) : GainTable(grid) {
    for (int j = 0; j < grid.points(); ++j) {
        const double x = grid.node(j);
        p1[j] = ks.gain_p1.eval(x);
        p2[j] = ks.gain_p2.eval(x);
        ky0[j] = ks.trace_ky0.eval(x);
        psi1[j] = ks.psi1.eval(x);
        psi2[j] = ks.psi2.eval(x);
    }
}

namespace {

void check_state(const GridFunction& u, StateKind expected, int points, const char* who) {
    if (u.kind != expected)
        throw std::invalid_argument(std::string(who) + ": unexpected state kind");
    if (u.size() != points)
        throw std::invalid_argument(std::string(who) + ": size mismatch");
}

}  // namespace

GridFunction step_error(const GridFunction& u, const GainTable& gains, const Stepper& st,
                        SimMode mode) {
    const int n = st.unknowns();
    const int points = n + 3;
    check_state(u, StateKind::error, points, "step_error");

    const auto [a, b] = left_traces(u, st.dx());
    const double dt = st.dt();
    const bool use_p1 = mode == SimMode::two_controller;
    const bool use_p2 = mode != SimMode::uncontrolled;

    std::vector<double> rhs(n);
    for (int i = 0; i < n; ++i) {
        const int j = i + 1;
        double r = u[j];
        if (use_p1) r += dt * gains.p1[j] * a;
        if (use_p2) r += dt * gains.p2[j] * b;
        rhs[i] = r;
    }
    const std::vector<double> x = st.solve(std::move(rhs));

    GridFunction next(points, StateKind::error);
    for (int i = 0; i < n; ++i) next[i + 1] = x[i];
    return next;
}

GridFunction step_observer_target(const GridFunction& w, std::pair<double, double> err_traces,
                                  const GainTable& gains, const Stepper& st, SimMode mode,
                                  double forced_boundary) {
    const int n = st.unknowns();
    const int points = n + 3;
    check_state(w, StateKind::observer_target, points, "step_observer_target");

    const double dt = st.dt();
    const double wx0 = w[1] / st.dx();
    const auto [a, b] = err_traces;
    const bool use_psi1 = mode == SimMode::two_controller;
    const double forced = (mode == SimMode::single_controller) ? forced_boundary : 0.0;

    std::vector<double> rhs(n);
    for (int i = 0; i < n; ++i) {
        const int j = i + 1;
        double r = w[j] + dt * gains.ky0[j] * wx0;
        if (use_psi1) r -= dt * gains.psi1[j] * a;
        r -= dt * gains.psi2[j] * b;
        rhs[i] = r;
    }
    const std::vector<double> x = st.solve(std::move(rhs), forced);

    GridFunction next(points, StateKind::observer_target);
    for (int i = 0; i < n; ++i) next[i + 1] = x[i];
    next[points - 2] = forced;
    return next;
}

GridFunction cell_average_init(const std::function<double(double)>& f, const Grid& grid,
                               StateKind kind) {
    // 5-point Gauss-Legendre nodes/weights on [-1, 1].
    static const double gl_x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                   0.5384693101056831, 0.9061798459386640};
    static const double gl_w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                   0.4786286704993665, 0.2369268850561891};
    const int J = grid.intervals;
    GridFunction out(grid.points(), kind);
#pragma omp parallel for schedule(static)
    for (int j = 1; j < J; ++j) {
        const double center = grid.node(j);
        const double h = 0.5 * grid.dx;
        double acc = 0.0;
        for (int q = 0; q < 5; ++q) acc += gl_w[q] * f(center + h * gl_x[q]);
        out[j] = 0.5 * acc;  // (1/dx) * (dx/2) * sum
    }
    out[0] = 0.0;
    out[J] = 0.0;
    if (kind == StateKind::error || kind == StateKind::observer_target) out[J - 1] = 0.0;
    return out;
}

}  // namespace kdv
