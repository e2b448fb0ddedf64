#include "kdv/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kdv/volterra.hpp"

namespace kdv {

BiPoly picard_step(const BiPoly& prev, double lambda) {
    const BiPoly source = BiPoly::monomial(1, 1, lambda / 3.0);
    const BiPoly prev_t = prev.diff(2);
    const BiPoly integrand = prev_t.diff(2).diff(2) * (-1.0) +
                             prev_t.diff(2).diff(1) * 3.0 +
                             prev_t * (-1.0) +
                             prev * (-lambda);
    const BiPoly triple = integrand.cumint(1).cumint(1).cumint(2);
    return source + triple * (1.0 / 3.0);
}

namespace {

// Sup norm of a polynomial in (s, t) on { t in [0, L], s in [0, L - t] },
// sampled on an n x n grid.
double triangle_sup(const BiPoly& p, double length, int n) {
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = length * i / (n - 1);
        const double smax = length - t;
        for (int j = 0; j < n; ++j) {
            const double s = smax * j / (n - 1);
            sup = std::max(sup, std::abs(p.eval(s, t)));
        }
    }
    return sup;
}

}  // namespace

PicardSolve solve_kernel(double lambda, double length, int n_iter) {
    if (n_iter < 1) throw std::invalid_argument("solve_kernel: n_iter must be at least 1");
    if (length <= 0.0) throw std::invalid_argument("solve_kernel: length must be positive");
    PicardSolve out;
    out.lambda = lambda;
    out.length = length;
    out.n_iter = n_iter;
    BiPoly g;
    for (int n = 0; n < n_iter; ++n) {
        BiPoly next = picard_step(g, lambda);
        out.increments.push_back(triangle_sup(next - g, length, 50));
        g = next;
    }
    out.g = g;
    return out;
}

KernelSet derive_kernel_set(const PicardSolve& solve_at_lambda, double lambda_tilde) {
    const double length = solve_at_lambda.length;
    const PicardSolve solve_tilde =
        (lambda_tilde == solve_at_lambda.lambda)
            ? solve_at_lambda
            : solve_kernel(lambda_tilde, length, solve_at_lambda.n_iter);

    KernelSet ks;
    ks.lambda = solve_at_lambda.lambda;
    ks.lambda_tilde = lambda_tilde;
    ks.length = length;
    ks.n_iter = solve_at_lambda.n_iter;
    ks.picard_increment =
        std::max(solve_at_lambda.last_increment(), solve_tilde.last_increment());

    // (s, t) <- (x - y, y) for k; (s, t) <- (x - y, L - x) for p.
    ks.k = solve_at_lambda.g.affine({1.0, -1.0, 0.0, 0.0, 1.0, 0.0});
    ks.p = solve_tilde.g.affine({1.0, -1.0, 0.0, -1.0, 0.0, length});

    ks.k_x = ks.k.diff(1);
    ks.k_y = ks.k.diff(2);
    ks.p_x = ks.p.diff(1);
    ks.p_y = ks.p.diff(2);

    ks.trace_ky0 = ks.k_y.at_v2(0.0);
    ks.trace_kxL = ks.k_x.at_v1(length);
    ks.trace_pxL = ks.p_x.at_v1(length);
    ks.trace_py0 = ks.p_y.at_v2(0.0);

    ks.gain_p1 = ks.trace_py0;
    ks.gain_p2 = ks.p.at_v2(0.0) * (-1.0);

    // Psi_i(x) = P_i(x) - H(x, x) with H(x, Y) = Int_0^Y P_i(y) k(x, y) dy.
    const auto transformed_gain = [&ks](const Poly1& gain) {
        const BiPoly integrand = BiPoly::from_univariate(gain, 2) * ks.k;
        return gain - integrand.cumint(2).diagonal();
    };
    ks.psi1 = transformed_gain(ks.gain_p1);
    ks.psi2 = transformed_gain(ks.gain_p2);
    return ks;
}

KernelSet make_kernel_set(double lambda, double lambda_tilde, double length, int n_iter) {
    return derive_kernel_set(solve_kernel(lambda, length, n_iter), lambda_tilde);
}

namespace {

KernelResidual residual_impl(const KernelSet& ks, int samples, bool parallel) {
    if (samples < 2) throw std::invalid_argument("kernel_residual: samples must be at least 2");
    const double length = ks.length;
    const BiPoly pde = ks.k_x.diff(1).diff(1) + ks.k_y.diff(2).diff(2) + ks.k_x + ks.k_y +
                       ks.k * ks.lambda;

    double pde_max = 0.0;
#pragma omp parallel for reduction(max : pde_max) schedule(static) if (parallel)
    for (int i = 0; i < samples; ++i) {
        const double x = length * i / (samples - 1);
        for (int j = 0; j < samples; ++j) {
            const double y = x * j / (samples - 1);
            pde_max = std::max(pde_max, std::abs(pde.eval(x, y)));
        }
    }

    const Poly1 bc_diag = ks.k.diagonal();
    const Poly1 bc_base = ks.k.at_v2(0.0);
    const Poly1 bc_slope = ks.k_x.diagonal() - Poly1::monomial(1, ks.lambda / 3.0);
    double bc_max = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = length * i / (samples - 1);
        bc_max = std::max({bc_max, std::abs(bc_diag.eval(x)), std::abs(bc_base.eval(x)),
                           std::abs(bc_slope.eval(x))});
    }
    return {pde_max, bc_max};
}

}  // namespace

KernelResidual kernel_residual(const KernelSet& ks, int samples) {
    return residual_impl(ks, samples, true);
}

KernelResidual kernel_residual_serial(const KernelSet& ks, int samples) {
    return residual_impl(ks, samples, false);
}

double default_epsilon(const KernelSet& ks) {
    const double margin = ks.lambda - 0.5 * ks.trace_ky0.l2_norm_sq(ks.length);
    const double denom =
        ks.psi1.l2_norm_sq(ks.length) + ks.psi2.l2_norm_sq(ks.length);
    if (margin <= 0.0 || denom <= 1e-300) return 1.0;
    return margin / denom;
}

DecayConstants decay_constants(const KernelSet& ks, double epsilon, const Grid& grid) {
    if (epsilon <= 0.0) throw std::invalid_argument("decay_constants: epsilon must be positive");
    DecayConstants d;
    d.epsilon = epsilon;
    const double length = ks.length;
    d.norm_ky0 = ks.trace_ky0.l2_norm_sq(length);
    d.norm_kxL = ks.trace_kxL.l2_norm_sq(length);
    d.norm_pxL = ks.trace_pxL.l2_norm_sq(length);
    d.norm_py0 = ks.trace_py0.l2_norm_sq(length);
    d.norm_psi1 = ks.psi1.l2_norm_sq(length);
    d.norm_psi2 = ks.psi2.l2_norm_sq(length);

    d.bound_inv = VolterraOp(ks.k, grid).inverse_inf_norm();

    d.alpha = ks.lambda_tilde - 0.5 * d.norm_pxL;
    d.kappa = ks.lambda - 0.5 * d.norm_ky0 - 0.5 * epsilon * (d.norm_psi1 + d.norm_psi2);
    d.beta = ks.lambda_tilde - 0.5 * d.norm_pxL - 0.5 * d.norm_py0;
    d.mu = ks.lambda - 0.5 * d.norm_ky0 - 0.5 * epsilon * d.norm_psi2 -
           0.5 * d.norm_kxL * d.bound_inv * d.bound_inv;
    return d;
}

}  // namespace kdv
