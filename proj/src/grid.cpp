#include "kdv/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kdv {

Grid::Grid(double length_, int intervals_) : length(length_), intervals(intervals_) {
    if (length <= 0.0) throw std::invalid_argument("Grid: length must be positive");
    if (intervals < 6) throw std::invalid_argument("J must be at least 6");
    dx = length / intervals;
}

double discrete_l2(std::span<const double> values, double dx) {
    if (values.empty()) return 0.0;
    double acc = 0.0;
    const size_t last = values.size() - 1;
    for (size_t j = 1; j < last; ++j) acc += values[j] * values[j];
    acc += 0.5 * (values[0] * values[0] + values[last] * values[last]);
    return std::sqrt(acc * dx);
}

double trapezoid(std::span<const double> values, double dx) {
    if (values.size() < 2) return 0.0;
    double acc = 0.5 * (values.front() + values.back());
    for (size_t j = 1; j + 1 < values.size(); ++j) acc += values[j];
    return acc * dx;
}

}  // namespace kdv
