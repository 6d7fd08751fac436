#ifndef HFOX_KERNEL_LATTICE_HPP
#define HFOX_KERNEL_LATTICE_HPP

#include "hfox/mellin_barnes.hpp"
#include "hfox/params.hpp"
#include "hfox/types.hpp"

#include <vector>

namespace hfox {

struct LatticeOptions {
    double base_points_per_decade = 48.0;  // node density where the kernel is smooth
    double max_phase = 3000.0;             // oscillation budget (radians) for the upper end
    double decay_floor = 1e-18;            // stop extending once |H| is this small and falling
    double nu_hint = 0.5;
};

/// Gauss-Legendre quadrature lattice for integrals of the form
/// Int H(w) f(w/x) dw/x over w in log space. Kernel values are computed once
/// per node (the expensive part) and shared by every x; panel lengths track
/// the kernel's oscillation rate so a 16-point rule per panel stays accurate.
class KernelLattice {
public:
    KernelLattice(const HFunctionParams& params, double w_lo, double w_hi,
                  const LatticeOptions& options = LatticeOptions{});

    /// Int_{w in [x*t_lo_clip, x*t_hi_clip]} H(w) g(w/x) dw / x for a
    /// pointwise integrand factor g (zero outside its own support).
    /// kernel_err accumulates |quadrature coefficient| * kernel error.
    Complex integrate(double x, const std::function<Complex(double)>& g,
                      double* kernel_err = nullptr) const;

    double built_max() const { return w_max_built_; }
    double built_min() const { return w_min_built_; }
    /// Oscillation rate of H at w (radians per unit log w).
    double oscillation_rate(double w) const;
    /// Bound on an omitted oscillatory tail starting at w_edge.
    double truncation_bound(double integrand_mag, double w_edge) const;
    std::size_t node_count() const { return node_w_.size(); }
    double max_kernel_error() const { return max_kernel_err_; }
    /// |H| near the bottom/top lattice edge (for truncation bounds).
    double edge_magnitude(bool top) const { return top ? h_mag_hi_ : h_mag_lo_; }

private:
    HFunctionParams params_;
    double delta_ = 1.0;     // derived constant delta of the kernel
    double Delta_ = 0.0;     // derived constant Delta
    double a_star_ = 0.0;
    double w_min_built_ = 0.0;
    double w_max_built_ = 0.0;
    double max_kernel_err_ = 0.0;
    double h_mag_lo_ = 0.0;
    double h_mag_hi_ = 0.0;
    // flattened per-node data, grouped in panels of 16
    std::vector<double> node_w_;
    std::vector<Complex> node_coeff_;  // GL weight * half-length * H(w) * w
    std::vector<double> node_err_;     // same weights times the kernel error estimate
    std::vector<double> panel_lo_, panel_hi_;  // u-extents per panel
};

/// Cubic (Catmull-Rom) interpolation of a sampled function in log t.
/// Returns 0 outside the grid range.
class GridInterpolant {
public:
    explicit GridInterpolant(const GridFunction& f);
    Complex operator()(double t) const;
    double edge_magnitude() const { return edge_mag_; }

private:
    std::vector<double> u_;
    std::vector<Complex> v_;
    double u0_ = 0.0, h_ = 0.0;
    bool uniform_ = false;
    double edge_mag_ = 0.0;
};

} // namespace hfox

#endif
