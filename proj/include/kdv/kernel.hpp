#pragma once

#include <vector>

#include "kdv/grid.hpp"
#include "kdv/poly.hpp"

namespace kdv {

/// Result of the successive-approximation solve for the transform kernel
/// in characteristic variables (s, t) = (x - y, y).
struct PicardSolve {
    BiPoly g;
    double lambda = 0.0;
    double length = 0.0;
    int n_iter = 0;
    /// Sup-norm change of each iterate, sampled on a 50x50 grid of the
    /// triangle { t in [0, L], s in [0, L - t] }.
    std::vector<double> increments;
    double last_increment() const { return increments.empty() ? 0.0 : increments.back(); }
};

/// One step of the fixed-point iteration: maps the previous iterate to
///   (lambda/3) s t
///   + (1/3) * Int_0^t Int_0^s Int_0^w
///       (-G_ttt + 3 G_stt - G_t - lambda G)(xi, eta) dxi dw deta,
/// computed exactly on the coefficient table (cumulative integral in the
/// first variable twice, then in the second).
BiPoly picard_step(const BiPoly& prev, double lambda);

/// Iterate picard_step n_iter times from G = 0, tracking sup-norm changes.
PicardSolve solve_kernel(double lambda, double length, int n_iter);

/// Solved kernels, their derivatives, boundary traces, observer gains and
/// transformed gains. All members are polynomials in (x, y) or x alone and
/// are immutable after construction.
struct KernelSet {
    double lambda = 0.0;        // controller-side damping parameter
    double lambda_tilde = 0.0;  // observer-side damping parameter
    double length = 0.0;
    int n_iter = 0;

    BiPoly k, p;                // transform kernels on the triangle y <= x
    BiPoly k_x, k_y, p_x, p_y;  // first partials

    Poly1 trace_ky0;  // k_y(x, 0)
    Poly1 trace_kxL;  // k_x(L, y)
    Poly1 trace_pxL;  // p_x(L, y)
    Poly1 trace_py0;  // p_y(x, 0)

    Poly1 gain_p1;  // P1(x) = p_y(x, 0)
    Poly1 gain_p2;  // P2(x) = -p(x, 0)
    Poly1 psi1;     // Psi_i(x) = P_i(x) - Int_0^x P_i(y) k(x, y) dy
    Poly1 psi2;

    /// Largest final Picard increment among the solves backing k and p.
    double picard_increment = 0.0;
};

/// Compose k(x,y) = G(x-y, y) and p(x,y) = G~(x-y, L-x) from the solve at
/// lambda; when lambda_tilde differs a second solve at the same iteration
/// count is run for the p side.
KernelSet derive_kernel_set(const PicardSolve& solve_at_lambda, double lambda_tilde);

/// Convenience: solve and derive in one call.
KernelSet make_kernel_set(double lambda, double lambda_tilde, double length, int n_iter);

struct KernelResidual {
    /// Max of |k_xxx + k_yyy + k_x + k_y + lambda k| on a samples x samples
    /// grid of the triangle 0 <= y <= x <= L.
    double pde = 0.0;
    /// Max violation of k(x,x) = 0, k(x,0) = 0, k_x(x,x) = (lambda/3) x.
    double boundary = 0.0;
    double total() const { return pde > boundary ? pde : boundary; }
};

KernelResidual kernel_residual(const KernelSet& ks, int samples);
/// Reference implementation without the parallel sampling loop.
KernelResidual kernel_residual_serial(const KernelSet& ks, int samples);

/// Guaranteed exponential rates and the trace norms they are built from.
/// norm_* members are squared L2 norms over (0, L). Rates may come out
/// negative for aggressive parameters; they are reported, not enforced.
struct DecayConstants {
    double alpha = 0.0;  // error-system rate
    double kappa = 0.0;  // observer rate
    double beta = 0.0;   // single-measurement error rate
    double mu = 0.0;     // single-controller observer rate
    double epsilon = 0.0;

    double norm_ky0 = 0.0;
    double norm_kxL = 0.0;
    double norm_pxL = 0.0;
    double norm_py0 = 0.0;
    double norm_psi1 = 0.0;
    double norm_psi2 = 0.0;

    /// Sup-norm bound of the discrete inverse transform (I - K)^-1,
    /// max absolute row sum on the given grid.
    double bound_inv = 0.0;

    bool two_controller_ordered() const { return alpha > kappa && kappa > 0.0; }
    bool single_controller_ordered() const { return beta > mu; }
};

/// epsilon splitting the margin lambda - 0.5*||k_y(.,0)||^2 evenly between
/// the two Young-inequality terms; falls back to 1 when the transformed
/// gains vanish or the margin is non-positive.
double default_epsilon(const KernelSet& ks);

DecayConstants decay_constants(const KernelSet& ks, double epsilon, const Grid& grid);

}  // namespace kdv
