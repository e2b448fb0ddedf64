#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "kdv/grid.hpp"
#include "kdv/kernel.hpp"

namespace kdv {

/// Constant stencil of the advection-dispersion operator
///   (A u)_j = (u_{j+2} - 3 u_{j+1} + 3 u_j - u_{j-1}) / dx^3
///           + (u_{j+1} - u_{j-1}) / (2 dx)
/// acting on interior unknowns j = 1..J-2 of the constrained space
/// u_0 = u_{J-1} = u_J = 0.
struct SpatialStencil {
    double sub, diag, sup1, sup2;
    explicit SpatialStencil(double dx)
        : sub(-1.0 / (dx * dx * dx) - 0.5 / dx),
          diag(3.0 / (dx * dx * dx)),
          sup1(-3.0 / (dx * dx * dx) + 0.5 / dx),
          sup2(1.0 / (dx * dx * dx)) {}
};

/// Implicit one-step matrix C = shift*I + dt*A over the interior unknowns,
/// factored once (banded LU, partial pivoting) and immutable afterwards.
/// Out-of-range stencil references resolve to the constraint values:
/// u_0 = u_J = 0 always, u_{J-1} = 0 unless a forced value is supplied.
class Stepper {
public:
    Stepper(const Grid& grid, double shift, double dt);

    int unknowns() const { return n_; }
    double shift() const { return shift_; }
    double dt() const { return dt_; }
    double dx() const { return dx_; }

    /// y = C x, with u_{J-1} = forced_jm1 on the boundary-coupled rows.
    std::vector<double> multiply(std::span<const double> x, double forced_jm1 = 0.0) const;
    /// Solve C x = rhs; forced_jm1 is folded into the right-hand side.
    std::vector<double> solve(std::vector<double> rhs, double forced_jm1 = 0.0) const;

private:
    int n_;
    double shift_, dt_, dx_;
    double sub_, diag_, sup1_, sup2_;  // entries of C off the factorization
    // Band rows: slot s of row r holds column r-1+s (upper bandwidth grows
    // to 3 under pivoting, so 5 slots).
    std::vector<std::array<double, 5>> rows_;
    std::vector<double> mult_;
    std::vector<std::uint8_t> swapped_;

    void factor();
};

/// (u_1/dx, (u_2 - 2 u_1)/dx^2), approximating u_x(0) and u_xx(0)
/// for states with u_0 = 0.
std::pair<double, double> left_traces(const GridFunction& u, double dx);

/// Nodal values of the kernel gain functions, evaluated once per run.
struct GainTable {
    std::vector<double> p1, p2, ky0, psi1, psi2;
    explicit GainTable(const Grid& grid);  // all zero (uncontrolled)
    GainTable(const KernelSet& ks, const Grid& grid);
};

/// One implicit step of the error system:
///   C (shift 1) u^{n+1} = u^n + dt*(P1(x_j) a + P2(x_j) b),
/// with (a, b) the left traces of u^n. single_controller drops the P1
/// term; uncontrolled drops both.
GridFunction step_error(const GridFunction& u, const GainTable& gains, const Stepper& st,
                        SimMode mode);

/// One implicit step of the observer target:
///   C (shift 1 + dt*lambda) w^{n+1}
///     = w^n + dt*(k_y(x_j,0) w_1^n/dx - Psi1(x_j) a - Psi2(x_j) b)
/// with (a, b) the error traces at level n. single_controller drops the
/// Psi1 term and imposes w_{J-1}^{n+1} = forced_boundary (the lagged
/// right-end flux), which the interior stencil also sees.
GridFunction step_observer_target(const GridFunction& w, std::pair<double, double> err_traces,
                                  const GainTable& gains, const Stepper& st, SimMode mode,
                                  double forced_boundary = 0.0);

/// Cell averages (1/dx) * Int_{x_{j-1/2}}^{x_{j+1/2}} f, 5-point
/// Gauss-Legendre per cell, boundary-constrained entries set to zero.
GridFunction cell_average_init(const std::function<double(double)>& f, const Grid& grid,
                               StateKind kind);

}  // namespace kdv
