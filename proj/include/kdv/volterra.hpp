#pragma once

#include <functional>
#include <span>
#include <vector>

#include "kdv/grid.hpp"
#include "kdv/poly.hpp"

namespace kdv {

/// Discrete Volterra transform (I - K)u on grid functions, where
/// (K u)_j approximates Int_0^{x_j} eta(x_j, y) u(y) dy with composite
/// trapezoid weights on the prefix [0, x_j]. Row 0 is empty. The operator
/// is immutable after construction; apply/invert are pure and reentrant.
class VolterraOp {
public:
    VolterraOp(const BiPoly& eta, const Grid& grid);
    VolterraOp(const std::function<double(double, double)>& eta, const Grid& grid);

    const Grid& grid() const { return grid_; }
    /// K matrix entry (weight times kernel value); zero above the diagonal.
    double entry(int row, int col) const { return kmat_[row * points_ + col]; }

    /// w = u - K u. Rows are independent and computed in parallel.
    GridFunction apply(const GridFunction& u) const;
    /// Reference row loop without the parallel pragma; bitwise identical.
    GridFunction apply_serial(const GridFunction& u) const;

    /// Succession iteration for (I - K)^-1: v0 = K w, v_k = K(w + v_{k-1});
    /// returns w + v_{m_iter}.
    GridFunction invert_succession(const GridFunction& w, int m_iter) const;

    /// Forward substitution on the lower-triangular system (I - K)u = w;
    /// the exact discrete inverse.
    GridFunction invert_direct(const GridFunction& w) const;

    /// ||(I - K)u - w|| / ||w|| in the discrete L2 norm (0 when w = 0).
    double inverse_residual(const GridFunction& u, const GridFunction& w) const;

    /// Max absolute row sum of (I - K)^-1.
    double inverse_inf_norm() const;

private:
    Grid grid_;
    int points_;
    std::vector<double> kmat_;  // row-major (J+1) x (J+1), lower triangular

    void build(const std::function<double(double, double)>& eta);
    void check_same_grid(const GridFunction& u) const;
    // v = K u
    void kmul(std::span<const double> u, std::span<double> v) const;
};

}  // namespace kdv
