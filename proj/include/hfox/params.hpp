#ifndef HFOX_PARAMS_HPP
#define HFOX_PARAMS_HPP

#include "hfox/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hfox {

/// One (coefficient, scale) pair of an H-function parameter row.
struct GammaPair {
    Complex a;     // a_i or b_j
    double scale;  // alpha_i or beta_j, strictly positive

    friend bool operator==(const GammaPair&, const GammaPair&) = default;
};

/// Orders (m,n,p,q) and the two coefficient rows defining one H-function
/// kernel. The first n upper rows and first m lower rows feed numerator
/// gamma factors; the rest feed the denominator.
struct HFunctionParams {
    int m = 0, n = 0, p = 0, q = 0;
    std::vector<GammaPair> upper;  // p entries (a_i, alpha_i)
    std::vector<GammaPair> lower;  // q entries (b_j, beta_j)

    void validate() const;  // throws std::invalid_argument on violated invariants

    friend bool operator==(const HFunctionParams&, const HFunctionParams&) = default;
};

/// All derived constants of one parameter set. alpha/beta/alpha0/beta0 are
/// extended reals (+-inf encode the empty max/min cases). varrho is present
/// only when a* = 0 and Delta > 0.
struct DerivedConstants {
    double a_star = 0.0;
    double a1_star = 0.0;
    double a2_star = 0.0;
    double delta = 1.0;     // prod alpha^-alpha * prod beta^beta
    double Delta = 0.0;     // sum beta - sum alpha
    Complex mu{0.0, 0.0};
    double alpha = 0.0;     // -inf when m = 0
    double beta = 0.0;      // +inf when n = 0
    double alpha0 = 0.0;    // -inf when q = m
    double beta0 = 0.0;     // +inf when p = n
    double rho = 0.0;       // min Re(b_j)/beta_j over j<=m; +inf when m = 0
    std::optional<double> varrho;  // only when a*=0 and Delta>0
    int log_order_zero = 0;  // M of the power-log correction at zero
    int log_order_inf = 0;   // N of the power-log correction at infinity
};

/// One coincidence found by the pole-separation scan.
struct PoleCoincidence {
    std::string family;      // "2.8", "2.9" or "2.11"
    Complex location;        // pole position in the s-plane
    int order = 2;           // multiplicity at that point
};

/// Result of the windowed pole-separation checks (2.8), (2.9), (2.11).
struct PoleSeparationReport {
    bool numerator_disjoint = true;  // (2.8)
    bool lower_simple = true;        // (2.9)
    bool upper_simple = true;        // (2.11)
    int log_order_zero = 0;          // M = max lower-pole multiplicity - 1
    int log_order_inf = 0;           // N = max upper-pole multiplicity - 1
    int window = 0;                  // K_max actually used
    std::vector<PoleCoincidence> coincidences;
};

/// One evaluated theorem condition with its numeric sides.
struct Condition {
    std::string name;
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
};

enum class InversionBranch { formula_1_11, formula_1_12, either, none };

std::string to_string(InversionBranch b);

/// Classifier verdict at one (nu, r).
struct RegimeReport {
    double nu = 0.5;
    double r = 2.0;
    double gamma_r = 0.5;                        // max(1/r, 1/r')
    std::vector<Condition> conditions;
    std::vector<std::string> applicable_theorems;  // subset of {"2.1",...,"4.2"}
    InversionBranch inversion_branch = InversionBranch::none;
    std::vector<Complex> exceptional_hits;
    DerivedConstants constants;
    std::vector<std::string> notes;

    bool theorem_applies(const std::string& id) const;
};

/// Options for the exceptional-set scan.
struct ScanOptions {
    double t_max = 50.0;
    int steps = 4096;
    double threshold = 1e-8;  // relative to the median of |chi| on the line
};

/// Derived constants (1.6)-(1.8), (2.1)-(2.4), (3.4)-(3.5), (2.10)/(2.12).
/// Block sums are accumulated over sorted values so that equal multisets give
/// bit-identical results (the duality checks rely on this).
DerivedConstants derive_constants(const HFunctionParams& params);

/// Parameter set of the reciprocal multiplier 1/chi(1-s): orders
/// (q-m, p-n, p, q), rows rewritten as (1-a-alpha, alpha) / (1-b-beta, beta)
/// with the denominator blocks moved first.
HFunctionParams dual_params(const HFunctionParams& params);

/// gamma(r) = max(1/r, 1/r') with 1/r + 1/r' = 1. Requires r > 1.
double gamma_exponent(double r);

/// Windowed check of conditions (2.8), (2.9), (2.11) over k,l <= window.
PoleSeparationReport check_pole_separation(const HFunctionParams& params,
                                           int window = 64,
                                           double tolerance = 1e-12);

/// Evaluate which mapping/inversion theorems apply at (nu, r) and scan the
/// line Re(s) = 1-nu for zeros of chi when that line is admissible.
RegimeReport classify_regime(const HFunctionParams& params, double nu, double r,
                             const ScanOptions& scan = ScanOptions{});

/// Sample |chi(1-nu+it)| on [-t_max, t_max] and return refined locations of
/// local minima that fall below threshold * median (heuristic zero scan).
/// Throws ContourError when the line touches a numerator pole.
std::vector<Complex> scan_exceptional_line(const HFunctionParams& params, double nu,
                                           double t_max = 50.0, int steps = 4096,
                                           double threshold = 1e-8);

} // namespace hfox

#endif
