#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kdv/fdsolver.hpp"
#include "kdv/grid.hpp"
#include "kdv/kernel.hpp"

namespace kdv {

/// Run parameters. grid_points is the interval count J (J+1 nodes).
/// epsilon empty means the default choice from the kernel margins.
struct SimConfig {
    double length = 6.283185307179586;
    double lambda = 0.01;
    double lambda_tilde = 0.01;
    std::optional<double> epsilon;
    int grid_points = 200;
    double dt = 1e-3;
    double t_final = 30.0;
    int n_iter = 10;
    int m_iter = 10;
    SimMode mode = SimMode::two_controller;
    std::string u0 = "one-minus-cos";
    std::string uhat0 = "zero";
    int record_every = 10;
    bool record_states = false;
};

/// Throws std::invalid_argument on out-of-range parameters.
void validate(const SimConfig& config);

/// Full states captured at one recorded step (only when record_states).
struct StateSnapshot {
    double time = 0.0;
    std::vector<double> u, uhat, uerr;
};

struct DecayReport {
    SimConfig config;

    std::vector<double> times;
    std::vector<double> l2_u, l2_uhat, l2_err, h3_err;
    std::vector<double> u_signal, v_signal;  // right-end feedback values U, V
    std::vector<StateSnapshot> states;

    double fitted_rate_u = 0.0;
    double fitted_rate_err = 0.0;
    double fitted_rate_uhat = 0.0;

    DecayConstants constants;
    double picard_residual = 0.0;
    double succession_residual = 0.0;
    /// Max over recorded steps of ||(I-K) uhat - what|| / ||what||.
    double reconstruction_residual = 0.0;
    double runtime_seconds = 0.0;
};

/// Execute the full pipeline: kernel solve, gain derivation, coupled
/// implicit time loop with transform inversion each step, norm tracking
/// and decay-rate fits. Throws on compatibility violations and aborts
/// with a diagnostic when a tracked norm blows up or turns non-finite.
DecayReport run(const SimConfig& config);

/// Least-squares slope of -ln(norm) against t after discarding the first
/// skip_fraction of the horizon and entries below 1e-14. Requires at
/// least 10 usable samples.
double fit_decay_rate(std::span<const double> times, std::span<const double> norms,
                      double skip_fraction);

/// Discrete H3-style norm: sqrt( sum (u^2 + (D+u)^2 + (D+D+u)^2
/// + (D+D+D+u)^2) dx ), forward differences truncated at the right end.
double h3_norm(std::span<const double> u, double dx);

/// Resolve an initial-datum descriptor: "zero", "one-minus-cos", or
/// "file:<path>" (nodal values, one per line, or x/value pairs).
std::function<double(double)> resolve_initial_datum(const std::string& descriptor,
                                                    const Grid& grid);

const char* to_string(SimMode mode);
SimMode mode_from_string(const std::string& name);

}  // namespace kdv
