#pragma once

#include <span>
#include <vector>

namespace kdv {

/// Uniform mesh on [0, L] with J intervals and J+1 nodes x_j = j*dx.
/// J >= 6 so the interior stencil never overlaps both boundary closures.
struct Grid {
    double length;
    int intervals;
    double dx;

    Grid(double length, int intervals);
    int points() const { return intervals + 1; }
    double node(int j) const { return j * dx; }
};

/// Role of a discrete state; fixes which entries are boundary-constrained.
enum class StateKind { error, observer_target, plant, generic };

enum class SimMode { uncontrolled, two_controller, single_controller };

struct GridFunction {
    std::vector<double> values;
    StateKind kind = StateKind::generic;

    GridFunction() = default;
    GridFunction(int points, StateKind k) : values(points, 0.0), kind(k) {}
    int size() const { return static_cast<int>(values.size()); }
    double& operator[](int j) { return values[j]; }
    double operator[](int j) const { return values[j]; }
};

/// Discrete L2 norm with composite-trapezoid weights (dx/2 at the ends).
double discrete_l2(std::span<const double> values, double dx);

/// Trapezoid quadrature of values over the whole interval.
double trapezoid(std::span<const double> values, double dx);

}  // namespace kdv
