#ifndef HFOX_MELLIN_HPP
#define HFOX_MELLIN_HPP

#include "hfox/types.hpp"

namespace hfox {

namespace defaults {
constexpr double points_per_decade = 64.0;
constexpr double grid_min = 1e-4;
constexpr double grid_max = 1e4;
constexpr double line_half_height = 40.0;
constexpr std::size_t line_nodes = 2048;
} // namespace defaults

/// Options for mellin_inverse.
struct InverseOptions {
    double coverage_tol = 1e-3;   // max |F| at the line ends relative to its peak
    double taper_fraction = 0.0;  // raised-cosine taper on the outer fraction of the line
};

/// Options for mellin_forward.
struct ForwardOptions {
    // Continue f beyond the grid by power laws fitted to the outer 10% of
    // nodes. Disable when the grid covers the entire support of f.
    bool fit_tails = true;
};

/// (M f)(sigma + i tau) = Int t^{s-1} f(t) dt by trapezoidal quadrature on
/// the log grid. With fit_tails the sum is extended beyond non-negligible
/// ends by a fitted power-law continuation (the geometric tail of the same
/// lattice on log-uniform grids); a divergent fitted tail raises DomainError
/// naming the offending end. Tail magnitudes and unmodeled-tail bounds are
/// reported via diag.
MellinLineFunction mellin_forward(const GridFunction& f, double sigma,
                                  const std::vector<double>& imag_nodes,
                                  Diagnostics* diag = nullptr,
                                  const ForwardOptions& options = ForwardOptions{});

/// f(t) = (1/2 pi) Int F(sigma + i tau) t^{-sigma - i tau} d tau by
/// trapezoidal quadrature over the sampled line. Raises AccuracyError when
/// |F| at the extreme nodes exceeds coverage_tol times its peak.
GridFunction mellin_inverse(const MellinLineFunction& F, const std::vector<double>& grid,
                            const InverseOptions& options = InverseOptions{},
                            Diagnostics* diag = nullptr);

/// (Pi_a f)(x) = f(a x): the grid is rescaled by 1/a, values are shared.
/// Satisfies (M Pi_a f)(s) = a^{-s} (M f)(s).
GridFunction dilate(const GridFunction& f, double a);

/// Uniform symmetric line nodes tau in [-half_height, half_height].
std::vector<double> make_line_nodes(double half_height = defaults::line_half_height,
                                    std::size_t nodes = defaults::line_nodes);

} // namespace hfox

#endif
