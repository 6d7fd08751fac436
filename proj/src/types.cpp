#include "hfox/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hfox {

void GridFunction::validate() const {
    if (grid.size() != values.size())
        throw std::invalid_argument("GridFunction: grid/value length mismatch");
    if (grid.empty())
        throw std::invalid_argument("GridFunction: empty grid");
    double prev = 0.0;
    for (double t : grid) {
        if (!(t > prev))
            throw std::invalid_argument("GridFunction: grid must be strictly increasing and positive");
        prev = t;
    }
}

void MellinLineFunction::validate() const {
    if (imag_nodes.size() != values.size())
        throw std::invalid_argument("MellinLineFunction: node/value length mismatch");
    if (imag_nodes.empty())
        throw std::invalid_argument("MellinLineFunction: empty node list");
}

void Diagnostics::merge(const Diagnostics& other) {
    error_estimate += other.error_estimate;
    outside_proven_regime = outside_proven_regime || other.outside_proven_regime;
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

std::vector<double> make_log_grid(double t_min, double t_max, double points_per_decade) {
    if (!(t_min > 0.0) || !(t_max > t_min) || !(points_per_decade > 0.0))
        throw std::invalid_argument("make_log_grid: need 0 < t_min < t_max, points_per_decade > 0");
    const double u0 = std::log(t_min), u1 = std::log(t_max);
    const auto n = static_cast<std::size_t>(
        std::ceil((u1 - u0) / std::log(10.0) * points_per_decade)) + 1;
    std::vector<double> g(n);
    const double h = (u1 - u0) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = std::exp(u0 + h * static_cast<double>(i));
    g.front() = t_min;
    g.back() = t_max;
    return g;
}

std::vector<double> make_uniform_grid(double lo, double hi, std::size_t n) {
    if (n < 2 || !(hi > lo))
        throw std::invalid_argument("make_uniform_grid: need n >= 2, hi > lo");
    std::vector<double> g(n);
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo + h * static_cast<double>(i);
    g.back() = hi;
    return g;
}

GridFunction sample_function(const std::vector<double>& grid,
                             const std::function<Complex(double)>& f,
                             double weight_nu) {
    GridFunction out;
    out.grid = grid;
    out.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        out.values[i] = f(grid[i]);
    out.weight_nu = weight_nu;
    out.validate();
    return out;
}

std::pair<std::size_t, std::size_t> interior_window(const std::vector<double>& grid,
                                                    double fraction) {
    if (grid.empty())
        return {0, 0};
    const double u0 = std::log(grid.front());
    const double u1 = std::log(grid.back());
    const double pad = 0.5 * (1.0 - fraction) * (u1 - u0);
    const double lo = u0 + pad, hi = u1 - pad;
    std::size_t first = 0, last = grid.size();
    while (first < grid.size() && std::log(grid[first]) < lo)
        ++first;
    while (last > first && std::log(grid[last - 1]) > hi)
        --last;
    return {first, last};
}

double relative_l2_error(const GridFunction& approx, const GridFunction& reference,
                         std::size_t first, std::size_t last) {
    if (approx.grid.size() != reference.grid.size())
        throw std::invalid_argument("relative_l2_error: grids differ in size");
    last = std::min(last, approx.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = first; i < last; ++i) {
        // dt/t weight on a (possibly nonuniform) log grid
        const std::size_t il = (i == 0) ? 0 : i - 1;
        const std::size_t ir = std::min(i + 1, approx.size() - 1);
        const double w = 0.5 * (std::log(approx.grid[ir]) - std::log(approx.grid[il]));
        num += w * std::norm(approx.values[i] - reference.values[i]);
        den += w * std::norm(reference.values[i]);
    }
    if (den == 0.0)
        return num == 0.0 ? 0.0 : std::sqrt(num);
    return std::sqrt(num / den);
}

double log_log_slope(const std::vector<double>& grid, const std::vector<Complex>& values,
                     std::size_t first, std::size_t last, double floor) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    last = std::min(last, grid.size());
    for (std::size_t i = first; i < last; ++i) {
        const double a = std::abs(values[i]);
        if (a <= floor)
            continue;
        const double x = std::log(grid[i]), y = std::log(a);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n < 2)
        throw std::invalid_argument("log_log_slope: fewer than two usable points");
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

} // namespace hfox
