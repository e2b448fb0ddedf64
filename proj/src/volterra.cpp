#include "kdv/volterra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kdv {

VolterraOp::VolterraOp(const BiPoly& eta, const Grid& grid)
    : grid_(grid), points_(grid.points()), kmat_(points_ * points_, 0.0) {
    build([&eta](double x, double y) { return eta.eval(x, y); });
}

VolterraOp::VolterraOp(const std::function<double(double, double)>& eta, const Grid& grid)
    : grid_(grid), points_(grid.points()), kmat_(points_ * points_, 0.0) {
    build(eta);
}

void VolterraOp::build(const std::function<double(double, double)>& eta) {
    const double dx = grid_.dx;
#pragma omp parallel for schedule(static)
    for (int j = 1; j < points_; ++j) {
        double* row = &kmat_[j * points_];
        const double xj = grid_.node(j);
        row[0] = 0.5 * dx * eta(xj, 0.0);
        for (int i = 1; i < j; ++i) row[i] = dx * eta(xj, grid_.node(i));
        row[j] = 0.5 * dx * eta(xj, xj);
    }
    for (int j = 1; j < points_; ++j) {
        if (std::abs(entry(j, j)) >= 1.0)
            throw std::invalid_argument(
                "VolterraOp: self-weight eta(x,x)*dx/2 reaches 1; refine the grid");
    }
}

void VolterraOp::check_same_grid(const GridFunction& u) const {
    if (u.size() != points_)
        throw std::invalid_argument("VolterraOp: grid function has " +
                                    std::to_string(u.size()) + " points, operator expects " +
                                    std::to_string(points_));
}

void VolterraOp::kmul(std::span<const double> u, std::span<double> v) const {
    v[0] = 0.0;
#pragma omp parallel for schedule(static)
    for (int j = 1; j < points_; ++j) {
        const double* row = &kmat_[j * points_];
        double acc = 0.0;
        for (int i = 0; i <= j; ++i) acc += row[i] * u[i];
        v[j] = acc;
    }
}

GridFunction VolterraOp::apply(const GridFunction& u) const {
    check_same_grid(u);
    GridFunction w(points_, u.kind);
    w[0] = u[0];
#pragma omp parallel for schedule(static)
    for (int j = 1; j < points_; ++j) {
        const double* row = &kmat_[j * points_];
        double acc = 0.0;
        for (int i = 0; i <= j; ++i) acc += row[i] * u[i];
        w[j] = u[j] - acc;
    }
    return w;
}

GridFunction VolterraOp::apply_serial(const GridFunction& u) const {
    check_same_grid(u);
    GridFunction w(points_, u.kind);
    w[0] = u[0];
    for (int j = 1; j < points_; ++j) {
        const double* row = &kmat_[j * points_];
        double acc = 0.0;
        for (int i = 0; i <= j; ++i) acc += row[i] * u[i];
        w[j] = u[j] - acc;
    }
    return w;
}

GridFunction VolterraOp::invert_succession(const GridFunction& w, int m_iter) const {
    if (m_iter < 0)
        throw std::invalid_argument("invert_succession: m_iter must be non-negative");
    check_same_grid(w);
    std::vector<double> v(points_, 0.0), arg(points_, 0.0);
    kmul(w.values, v);  // v0 = K w
    for (int k = 1; k <= m_iter; ++k) {
        for (int j = 0; j < points_; ++j) arg[j] = w[j] + v[j];
        kmul(arg, v);
    }
    GridFunction u(points_, w.kind);
    for (int j = 0; j < points_; ++j) u[j] = w[j] + v[j];
    return u;
}

GridFunction VolterraOp::invert_direct(const GridFunction& w) const {
    check_same_grid(w);
    GridFunction u(points_, w.kind);
    u[0] = w[0];
    for (int j = 1; j < points_; ++j) {
        const double* row = &kmat_[j * points_];
        double acc = w[j];
        for (int i = 0; i < j; ++i) acc += row[i] * u[i];
        u[j] = acc / (1.0 - row[j]);
    }
    return u;
}

double VolterraOp::inverse_residual(const GridFunction& u, const GridFunction& w) const {
    const GridFunction r = apply(u);
    std::vector<double> diff(points_);
    for (int j = 0; j < points_; ++j) diff[j] = r[j] - w[j];
    const double wn = discrete_l2(w.values, grid_.dx);
    if (wn == 0.0) return 0.0;
    return discrete_l2(diff, grid_.dx) / wn;
}

double VolterraOp::inverse_inf_norm() const {
    // Columns of (I - K)^-1 by forward substitution; rows accumulated after.
    std::vector<double> inv(points_ * points_, 0.0);
#pragma omp parallel for schedule(static)
    for (int c = 0; c < points_; ++c) {
        std::vector<double> z(points_, 0.0);
        z[c] = 1.0;
        for (int j = std::max(1, c); j < points_; ++j) {
            const double* row = &kmat_[j * points_];
            double acc = z[j];
            for (int i = c; i < j; ++i) acc += row[i] * z[i];
            z[j] = acc / (1.0 - row[j]);
        }
        for (int j = 0; j < points_; ++j) inv[j * points_ + c] = z[j];
    }
    double norm = 0.0;
    for (int j = 0; j < points_; ++j) {
        double row_sum = 0.0;
        for (int c = 0; c < points_; ++c) row_sum += std::abs(inv[j * points_ + c]);
        norm = std::max(norm, row_sum);
    }
    return norm;
}

}  // namespace kdv
