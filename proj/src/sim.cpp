#include "kdv/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kdv/volterra.hpp"

namespace kdv {

const char* to_string(SimMode mode) {
    switch (mode) {
        case SimMode::uncontrolled: return "uncontrolled";
        case SimMode::two_controller: return "two-controller";
        case SimMode::single_controller: return "single-controller";
    }
    return "unknown";
}

SimMode mode_from_string(const std::string& name) {
    if (name == "uncontrolled") return SimMode::uncontrolled;
    if (name == "two-controller") return SimMode::two_controller;
    if (name == "single-controller") return SimMode::single_controller;
    throw std::invalid_argument("unknown mode: " + name);
}

void validate(const SimConfig& c) {
    if (c.length <= 0.0) throw std::invalid_argument("length must be positive");
    if (c.lambda < 0.0 || c.lambda_tilde < 0.0)
        throw std::invalid_argument("kernel parameters must be non-negative");
    if (c.epsilon && *c.epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
    if (c.grid_points < 6) throw std::invalid_argument("J must be at least 6");
    if (c.dt <= 0.0) throw std::invalid_argument("dt must be positive");
    if (c.t_final <= 0.0) throw std::invalid_argument("t-final must be positive");
    if (c.t_final / c.dt > 1e7) throw std::invalid_argument("run too long: t-final/dt exceeds 1e7");
    if (c.n_iter < 1 || c.m_iter < 1)
        throw std::invalid_argument("n-iter and m-iter must be at least 1");
    if (c.record_every < 1) throw std::invalid_argument("record-every must be at least 1");
}

double fit_decay_rate(std::span<const double> times, std::span<const double> norms,
                      double skip_fraction) {
    if (times.size() != norms.size())
        throw std::invalid_argument("fit_decay_rate: size mismatch");
    if (times.empty()) throw std::invalid_argument("fit_decay_rate: empty series");
    const double t0 = times.front();
    const double cutoff = t0 + skip_fraction * (times.back() - t0);
    std::vector<double> t, y;
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] < cutoff) continue;
        if (!(norms[i] > 1e-14)) continue;
        t.push_back(times[i]);
        y.push_back(-std::log(norms[i]));
    }
    if (t.size() < 10)
        throw std::invalid_argument("fit_decay_rate: fewer than 10 usable samples");
    double tm = 0.0, ym = 0.0;
    for (size_t i = 0; i < t.size(); ++i) {
        tm += t[i];
        ym += y[i];
    }
    tm /= t.size();
    ym /= t.size();
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < t.size(); ++i) {
        num += (t[i] - tm) * (y[i] - ym);
        den += (t[i] - tm) * (t[i] - tm);
    }
    if (den == 0.0) throw std::invalid_argument("fit_decay_rate: degenerate time window");
    return num / den;
}

double h3_norm(std::span<const double> u, double dx) {
    const int points = static_cast<int>(u.size());
    if (points < 5) throw std::invalid_argument("h3_norm: need at least 5 nodes");
    double acc = 0.0;
    for (int j = 0; j < points; ++j) {
        double term = u[j] * u[j];
        if (j + 1 < points) {
            const double d1 = (u[j + 1] - u[j]) / dx;
            term += d1 * d1;
        }
        if (j + 2 < points) {
            const double d2 = (u[j + 2] - 2.0 * u[j + 1] + u[j]) / (dx * dx);
            term += d2 * d2;
        }
        if (j + 3 < points) {
            const double d3 =
                (u[j + 3] - 3.0 * u[j + 2] + 3.0 * u[j + 1] - u[j]) / (dx * dx * dx);
            term += d3 * d3;
        }
        acc += term;
    }
    return std::sqrt(acc * dx);
}

namespace {

std::function<double(double)> tabulated_datum(const std::string& path, const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open initial datum file: " + path);
    std::vector<double> numbers;
    double v;
    while (in >> v) numbers.push_back(v);
    std::vector<double> xs, ys;
    if (static_cast<int>(numbers.size()) == grid.points()) {
        // One value per node.
        for (int j = 0; j < grid.points(); ++j) {
            xs.push_back(grid.node(j));
            ys.push_back(numbers[j]);
        }
    } else if (numbers.size() >= 4 && numbers.size() % 2 == 0) {
        for (size_t i = 0; i < numbers.size(); i += 2) {
            xs.push_back(numbers[i]);
            ys.push_back(numbers[i + 1]);
        }
    } else {
        throw std::invalid_argument("initial datum file " + path + " must hold " +
                                    std::to_string(grid.points()) +
                                    " nodal values or x/value pairs");
    }
    for (size_t i = 1; i < xs.size(); ++i)
        if (xs[i] <= xs[i - 1])
            throw std::invalid_argument("initial datum abscissae must increase: " + path);
    return [xs = std::move(xs), ys = std::move(ys)](double x) {
        if (x <= xs.front()) return ys.front();
        if (x >= xs.back()) return ys.back();
        const auto it = std::upper_bound(xs.begin(), xs.end(), x);
        const size_t i = it - xs.begin();
        const double s = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
        return ys[i - 1] + s * (ys[i] - ys[i - 1]);
    };
}

}  // namespace

std::function<double(double)> resolve_initial_datum(const std::string& descriptor,
                                                    const Grid& grid) {
    if (descriptor == "zero") return [](double) { return 0.0; };
    if (descriptor == "one-minus-cos") return [](double x) { return 1.0 - std::cos(x); };
    if (descriptor.rfind("file:", 0) == 0) return tabulated_datum(descriptor.substr(5), grid);
    throw std::invalid_argument("unknown initial datum: " + descriptor);
}

namespace {

struct Recorder {
    DecayReport& report;
    const Grid& grid;
    double blowup_limit = 0.0;

    void operator()(double t, long step, const GridFunction& u, const GridFunction& uhat,
                    const GridFunction& uerr, double u_sig, double v_sig, bool keep_states) {
        const double dx = grid.dx;
        const double nu = discrete_l2(u.values, dx);
        const double nh = discrete_l2(uhat.values, dx);
        const double ne = discrete_l2(uerr.values, dx);
        const double n3 = h3_norm(uerr.values, dx);
        const double worst = std::max(std::max(nu, nh), std::max(ne, n3));
        if (!std::isfinite(worst) || (blowup_limit > 0.0 && worst > blowup_limit)) {
            std::ostringstream msg;
            msg << "solution blew up at step " << step << " (t = " << t
                << "): norm = " << worst;
            throw std::runtime_error(msg.str());
        }
        report.times.push_back(t);
        report.l2_u.push_back(nu);
        report.l2_uhat.push_back(nh);
        report.l2_err.push_back(ne);
        report.h3_err.push_back(n3);
        report.u_signal.push_back(u_sig);
        report.v_signal.push_back(v_sig);
        if (keep_states)
            report.states.push_back({t, u.values, uhat.values, uerr.values});
    }
};

double fit_or_zero(const std::vector<double>& times, const std::vector<double>& norms) {
    try {
        return fit_decay_rate(times, norms, 0.2);
    } catch (const std::invalid_argument&) {
        return 0.0;  // series too short or already at the floor
    }
}

}  // namespace

DecayReport run(const SimConfig& config) {
    validate(config);
    const auto clock_start = std::chrono::steady_clock::now();

    DecayReport report;
    report.config = config;

    const Grid grid(config.length, config.grid_points);
    const double dx = grid.dx;
    const long steps = std::lround(config.t_final / config.dt);

    const auto u0_fn = resolve_initial_datum(config.u0, grid);
    const auto uhat0_fn = resolve_initial_datum(config.uhat0, grid);
    if (std::abs(u0_fn(0.0)) > 1e-8 || std::abs(u0_fn(config.length)) > 1e-8)
        throw std::invalid_argument("initial datum violates compatibility u0(0) = u0(L) = 0");

    Recorder record{report, grid};

    if (config.mode == SimMode::uncontrolled) {
        GridFunction u = cell_average_init(u0_fn, grid, StateKind::error);
        const Stepper stepper(grid, 1.0, config.dt);
        const GainTable no_gains(grid);
        const GridFunction zero(grid.points(), StateKind::generic);

        const double initial = discrete_l2(u.values, dx);
        record.blowup_limit = 1e6 * std::max(initial, 1e-12);
        for (long n = 0; n <= steps; ++n) {
            if (n % config.record_every == 0 || n == steps)
                record(n * config.dt, n, u, zero, zero, 0.0, 0.0, config.record_states);
            if (n < steps) u = step_error(u, no_gains, stepper, SimMode::uncontrolled);
        }
        report.fitted_rate_u = fit_or_zero(report.times, report.l2_u);
        report.runtime_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start)
                .count();
        return report;
    }

    // Kernels, gains and theoretical constants.
    const KernelSet ks =
        make_kernel_set(config.lambda, config.lambda_tilde, config.length, config.n_iter);
    const double epsilon = config.epsilon ? *config.epsilon : default_epsilon(ks);
    report.constants = decay_constants(ks, epsilon, grid);
    report.picard_residual = ks.picard_increment;

    const GainTable gains(ks, grid);
    const VolterraOp transform(ks.k, grid);
    const Stepper err_stepper(grid, 1.0, config.dt);
    const Stepper obs_stepper(grid, 1.0 + config.dt * config.lambda, config.dt);

    // Trapezoid rows for the feedback signals U(t), V(t).
    std::vector<double> k_row(grid.points()), kx_row(grid.points());
    for (int i = 0; i < grid.points(); ++i) {
        const double w = (i == 0 || i == grid.intervals) ? 0.5 * dx : dx;
        k_row[i] = w * ks.k.eval(config.length, grid.node(i));
        kx_row[i] = w * ks.k_x.eval(config.length, grid.node(i));
    }
    const auto signal = [&](const std::vector<double>& row, const GridFunction& uhat) {
        double acc = 0.0;
        for (int i = 0; i < grid.points(); ++i) acc += row[i] * uhat[i];
        return acc;
    };

    // Discrete initial data: the error state lives in the constrained
    // space; the observer target comes from transforming the projected
    // observer datum, and uhat is reconstructed so that (I-K)uhat = what
    // holds exactly from the first step.
    GridFunction uerr = cell_average_init(
        [&](double x) { return uhat0_fn(x) - u0_fn(x); }, grid, StateKind::error);
    GridFunction what = transform.apply(cell_average_init(uhat0_fn, grid, StateKind::generic));
    what.kind = StateKind::observer_target;
    what[0] = 0.0;
    what[grid.intervals - 1] = 0.0;
    what[grid.intervals] = 0.0;
    GridFunction uhat = transform.invert_direct(what);
    uhat.kind = StateKind::generic;

    GridFunction u(grid.points(), StateKind::plant);
    const auto reconstruct = [&]() {
        for (int j = 0; j < grid.points(); ++j) u[j] = uhat[j] - uerr[j];
    };
    reconstruct();

    const auto succession_check = [&]() {
        const GridFunction via_succession = transform.invert_succession(what, config.m_iter);
        return transform.inverse_residual(via_succession, what);
    };
    report.succession_residual = succession_check();

    {
        const double initial =
            std::max(std::max(discrete_l2(u.values, dx), discrete_l2(uhat.values, dx)),
                     discrete_l2(uerr.values, dx));
        record.blowup_limit = 1e6 * std::max(initial, 1e-12);
    }

    for (long n = 0; n <= steps; ++n) {
        if (n % config.record_every == 0 || n == steps) {
            const double u_sig = signal(k_row, uhat);
            const double v_sig =
                (config.mode == SimMode::two_controller) ? signal(kx_row, uhat) : 0.0;
            record(n * config.dt, n, u, uhat, uerr, u_sig, v_sig, config.record_states);
            report.reconstruction_residual =
                std::max(report.reconstruction_residual, transform.inverse_residual(uhat, what));
        }
        if (n == steps) break;

        const auto traces = left_traces(uerr, dx);
        const double forced = (config.mode == SimMode::single_controller)
                                  ? dx * signal(kx_row, uhat)
                                  : 0.0;
        uerr = step_error(uerr, gains, err_stepper, config.mode);
        what = step_observer_target(what, traces, gains, obs_stepper, config.mode, forced);
        uhat = transform.invert_direct(what);
        uhat.kind = StateKind::generic;
        reconstruct();
    }
    report.succession_residual = std::max(report.succession_residual, succession_check());

    report.fitted_rate_u = fit_or_zero(report.times, report.l2_u);
    report.fitted_rate_err = fit_or_zero(report.times, report.l2_err);
    report.fitted_rate_uhat = fit_or_zero(report.times, report.l2_uhat);

    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
    return report;
}

}  // namespace kdv
