#ifndef HFOX_TYPES_HPP
#define HFOX_TYPES_HPP

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace hfox {

using Complex = std::complex<double>;

/// A complex-valued function sampled on a strictly increasing positive grid,
/// normally logarithmically spaced. Carrier for f, Hf and reconstructions.
struct GridFunction {
    std::vector<double> grid;      // strictly increasing, all > 0
    std::vector<Complex> values;   // same length as grid
    double weight_nu = 0.5;        // the nu for which int |t^nu f|^r dt/t is meant finite

    void validate() const;         // throws std::invalid_argument on bad shape
    std::size_t size() const { return grid.size(); }
};

/// Samples of a Mellin transform along the vertical line Re(s) = sigma.
struct MellinLineFunction {
    double sigma = 0.5;
    std::vector<double> imag_nodes;  // increasing
    std::vector<Complex> values;

    void validate() const;
    std::size_t size() const { return imag_nodes.size(); }
};

/// Diagnostics attached to quadrature-based operations. Fields are additive:
/// callers accumulate into one instance across pipeline stages.
struct Diagnostics {
    double error_estimate = 0.0;
    bool outside_proven_regime = false;
    std::vector<std::string> notes;

    void add_note(const std::string& n) { notes.push_back(n); }
    void merge(const Diagnostics& other);
};

/// Log-spaced grid with roughly points_per_decade nodes per decade,
/// including both endpoints.
std::vector<double> make_log_grid(double t_min, double t_max, double points_per_decade);

/// Uniform grid of n nodes on [lo, hi].
std::vector<double> make_uniform_grid(double lo, double hi, std::size_t n);

/// Sample a pointwise function onto a grid.
GridFunction sample_function(const std::vector<double>& grid,
                             const std::function<Complex(double)>& f,
                             double weight_nu);

/// Indices [first, last) of the central `fraction` of the grid in log measure.
std::pair<std::size_t, std::size_t> interior_window(const std::vector<double>& grid,
                                                    double fraction = 0.8);

/// Relative L2 error of `approx` against `reference` over index range
/// [first, last), with dt/t log-measure weights. Returns 0 when both vanish.
double relative_l2_error(const GridFunction& approx, const GridFunction& reference,
                         std::size_t first, std::size_t last);

/// Least-squares slope of log|values| against log(grid) over the given range;
/// entries with |value| <= floor are skipped.
double log_log_slope(const std::vector<double>& grid, const std::vector<Complex>& values,
                     std::size_t first, std::size_t last, double floor = 0.0);

} // namespace hfox

#endif
