#include "hfox/params.hpp"

#include "hfox/errors.hpp"
#include "hfox/mellin_barnes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hfox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEqTol = 1e-12;

bool nearly_zero(double x, double scale = 1.0) {
    return std::abs(x) <= kEqTol * std::max(1.0, std::abs(scale));
}

// Sum over a sorted copy: equal multisets produce bit-identical results
// regardless of the order the values arrived in.
double sorted_sum(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    double s = 0.0;
    for (double x : v)
        s += x;
    return s;
}

Complex sorted_sum(std::vector<Complex> v) {
    std::sort(v.begin(), v.end(), [](const Complex& a, const Complex& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    Complex s{0.0, 0.0};
    for (const Complex& x : v)
        s += x;
    return s;
}

std::vector<double> scales(const std::vector<GammaPair>& rows, int from, int to) {
    std::vector<double> v;
    for (int i = from; i < to; ++i)
        v.push_back(rows[static_cast<std::size_t>(i)].scale);
    return v;
}

std::vector<Complex> coeffs(const std::vector<GammaPair>& rows) {
    std::vector<Complex> v;
    for (const auto& r : rows)
        v.push_back(r.a);
    return v;
}

// Clusters a pole list by proximity and reports the largest multiplicity;
// coincidences of order >= 2 are appended to `out` under `family`.
int max_multiplicity(const std::vector<std::pair<Complex, int>>& poles,
                     double tol, const std::string& family,
                     std::vector<PoleCoincidence>& out) {
    const std::size_t n = poles.size();
    std::vector<bool> used(n, false);
    int worst = poles.empty() ? 0 : 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (used[i])
            continue;
        int count = 1;
        bool cross_row = false;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (used[j])
                continue;
            const double scale = std::max(1.0, std::abs(poles[i].first));
            if (std::abs(poles[i].first - poles[j].first) <= tol * scale) {
                used[j] = true;
                ++count;
                if (poles[j].second != poles[i].second)
                    cross_row = true;
            }
        }
        // Same-row poles of one gamma factor are always distinct; only
        // cross-row clusters raise the multiplicity.
        if (count > 1 && cross_row) {
            out.push_back({family, poles[i].first, count});
            worst = std::max(worst, count);
        }
    }
    return worst;
}

} // namespace

void HFunctionParams::validate() const {
    if (m < 0 || n < 0 || p < 0 || q < 0)
        throw std::invalid_argument("HFunctionParams: negative order");
    if (m > q || n > p)
        throw std::invalid_argument("HFunctionParams: need m <= q and n <= p");
    if (static_cast<int>(upper.size()) != p || static_cast<int>(lower.size()) != q)
        throw std::invalid_argument("HFunctionParams: row count does not match orders");
    for (const auto& r : upper)
        if (!(r.scale > 0.0))
            throw std::invalid_argument("HFunctionParams: alpha_i must be > 0");
    for (const auto& r : lower)
        if (!(r.scale > 0.0))
            throw std::invalid_argument("HFunctionParams: beta_j must be > 0");
}

std::string to_string(InversionBranch b) {
    switch (b) {
        case InversionBranch::formula_1_11: return "formula-1.11";
        case InversionBranch::formula_1_12: return "formula-1.12";
        case InversionBranch::either: return "either";
        case InversionBranch::none: return "none";
    }
    return "none";
}

bool RegimeReport::theorem_applies(const std::string& id) const {
    return std::find(applicable_theorems.begin(), applicable_theorems.end(), id) !=
           applicable_theorems.end();
}

DerivedConstants derive_constants(const HFunctionParams& params) {
    params.validate();
    const auto& up = params.upper;
    const auto& lo = params.lower;
    const int m = params.m, n = params.n, p = params.p, q = params.q;

    DerivedConstants c;
    c.a1_star = sorted_sum(scales(lo, 0, m)) - sorted_sum(scales(up, n, p));
    c.a2_star = sorted_sum(scales(up, 0, n)) - sorted_sum(scales(lo, m, q));
    c.a_star = c.a1_star + c.a2_star;
    c.Delta = sorted_sum(scales(lo, 0, q)) - sorted_sum(scales(up, 0, p));

    std::vector<double> log_terms_beta, log_terms_alpha;
    for (const auto& r : lo)
        log_terms_beta.push_back(r.scale * std::log(r.scale));
    for (const auto& r : up)
        log_terms_alpha.push_back(r.scale * std::log(r.scale));
    c.delta = std::exp(sorted_sum(log_terms_beta) - sorted_sum(log_terms_alpha));

    c.mu = sorted_sum(coeffs(lo)) - sorted_sum(coeffs(up)) + 0.5 * (p - q);

    c.alpha = -kInf;
    for (int j = 0; j < m; ++j)
        c.alpha = std::max(c.alpha, -lo[static_cast<std::size_t>(j)].a.real() /
                                        lo[static_cast<std::size_t>(j)].scale);
    c.beta = kInf;
    for (int i = 0; i < n; ++i)
        c.beta = std::min(c.beta, (1.0 - up[static_cast<std::size_t>(i)].a.real()) /
                                      up[static_cast<std::size_t>(i)].scale);
    c.alpha0 = -kInf;
    for (int j = m; j < q; ++j)
        c.alpha0 = std::max(c.alpha0, (lo[static_cast<std::size_t>(j)].a.real() - 1.0) /
                                              lo[static_cast<std::size_t>(j)].scale +
                                          1.0);
    c.beta0 = kInf;
    for (int i = n; i < p; ++i)
        c.beta0 = std::min(c.beta0, up[static_cast<std::size_t>(i)].a.real() /
                                            up[static_cast<std::size_t>(i)].scale +
                                        1.0);

    c.rho = kInf;
    for (int j = 0; j < m; ++j)
        c.rho = std::min(c.rho, lo[static_cast<std::size_t>(j)].a.real() /
                                    lo[static_cast<std::size_t>(j)].scale);

    if (nearly_zero(c.a_star, c.Delta) && c.Delta > 0.0) {
        double v = (c.mu.real() + 0.5) / c.Delta;
        for (int i = 0; i < n; ++i)
            v = std::max(v, (up[static_cast<std::size_t>(i)].a.real() - 1.0) /
                                up[static_cast<std::size_t>(i)].scale);
        c.varrho = v;
    }

    const PoleSeparationReport sep = check_pole_separation(params);
    c.log_order_zero = sep.log_order_zero;
    c.log_order_inf = sep.log_order_inf;
    return c;
}

HFunctionParams dual_params(const HFunctionParams& params) {
    params.validate();
    HFunctionParams d;
    d.m = params.q - params.m;
    d.n = params.p - params.n;
    d.p = params.p;
    d.q = params.q;
    auto reflect = [](const GammaPair& r) {
        return GammaPair{1.0 - r.a - r.scale, r.scale};
    };
    for (int i = params.n; i < params.p; ++i)
        d.upper.push_back(reflect(params.upper[static_cast<std::size_t>(i)]));
    for (int i = 0; i < params.n; ++i)
        d.upper.push_back(reflect(params.upper[static_cast<std::size_t>(i)]));
    for (int j = params.m; j < params.q; ++j)
        d.lower.push_back(reflect(params.lower[static_cast<std::size_t>(j)]));
    for (int j = 0; j < params.m; ++j)
        d.lower.push_back(reflect(params.lower[static_cast<std::size_t>(j)]));
    d.validate();
    return d;
}

double gamma_exponent(double r) {
    if (!(r > 1.0))
        throw std::invalid_argument("gamma_exponent: need r > 1");
    return std::max(1.0 / r, 1.0 - 1.0 / r);
}

PoleSeparationReport check_pole_separation(const HFunctionParams& params,
                                           int window, double tolerance) {
    params.validate();
    PoleSeparationReport rep;
    rep.window = window;

    // (2.8): beta_j (a_i - 1 - k) != alpha_i (b_j + l)
    for (int i = 0; i < params.n && rep.numerator_disjoint; ++i) {
        for (int j = 0; j < params.m && rep.numerator_disjoint; ++j) {
            const auto& ui = params.upper[static_cast<std::size_t>(i)];
            const auto& lj = params.lower[static_cast<std::size_t>(j)];
            for (int k = 0; k <= window && rep.numerator_disjoint; ++k) {
                for (int l = 0; l <= window; ++l) {
                    const Complex lhs = lj.scale * (ui.a - 1.0 - static_cast<double>(k));
                    const Complex rhs = ui.scale * (lj.a + static_cast<double>(l));
                    if (std::abs(lhs - rhs) <=
                        tolerance * std::max(1.0, std::max(std::abs(lhs), std::abs(rhs)))) {
                        rep.numerator_disjoint = false;
                        rep.coincidences.push_back(
                            {"2.8", (1.0 - ui.a + static_cast<double>(k)) / ui.scale, 2});
                        break;
                    }
                }
            }
        }
    }

    // (2.9): poles of the lower numerator gammas, s = -(b_j + k)/beta_j
    {
        std::vector<std::pair<Complex, int>> poles;
        for (int j = 0; j < params.m; ++j) {
            const auto& r = params.lower[static_cast<std::size_t>(j)];
            for (int k = 0; k <= window; ++k)
                poles.emplace_back(-(r.a + static_cast<double>(k)) / r.scale, j);
        }
        const int mult = max_multiplicity(poles, tolerance, "2.9", rep.coincidences);
        rep.lower_simple = mult <= 1;
        rep.log_order_zero = std::max(0, mult - 1);
    }

    // (2.11): poles of the upper numerator gammas, s = (1 - a_i + k)/alpha_i
    {
        std::vector<std::pair<Complex, int>> poles;
        for (int i = 0; i < params.n; ++i) {
            const auto& r = params.upper[static_cast<std::size_t>(i)];
            for (int k = 0; k <= window; ++k)
                poles.emplace_back((1.0 - r.a + static_cast<double>(k)) / r.scale, i);
        }
        const int mult = max_multiplicity(poles, tolerance, "2.11", rep.coincidences);
        rep.upper_simple = mult <= 1;
        rep.log_order_inf = std::max(0, mult - 1);
    }
    return rep;
}

std::vector<Complex> scan_exceptional_line(const HFunctionParams& params, double nu,
                                           double t_max, int steps, double threshold) {
    params.validate();
    if (steps < 8 || !(t_max > 0.0))
        throw std::invalid_argument("scan_exceptional_line: bad grid");
    const double sigma = 1.0 - nu;

    // The line must avoid the numerator poles.
    for (const Complex& pole : numerator_poles(params, 8)) {
        if (std::abs(pole.real() - sigma) <= 1e-9 && std::abs(pole.imag()) <= t_max + 1.0)
            throw ContourError("scan_exceptional_line: line Re(s) = " +
                               std::to_string(sigma) + " touches a numerator pole");
    }

    std::vector<double> mags(static_cast<std::size_t>(steps));
    const double h = 2.0 * t_max / static_cast<double>(steps - 1);
    auto mag_at = [&](double t) { return std::abs(chi(params, Complex(sigma, t))); };
    for (int i = 0; i < steps; ++i)
        mags[static_cast<std::size_t>(i)] = mag_at(-t_max + h * i);

    std::vector<double> sorted = mags;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double cutoff = threshold * std::max(median, 1e-300);

    std::vector<Complex> hits;
    for (int i = 1; i + 1 < steps; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        if (!(mags[iu] < mags[iu - 1] && mags[iu] <= mags[iu + 1]))
            continue;
        // Candidates: either already below the cutoff, or a steep V-shaped dip
        // (an actual zero between grid nodes looks like this before refinement).
        const bool steep = mags[iu] < 0.6 * std::min(mags[iu - 1], mags[iu + 1]);
        if (mags[iu] >= 16.0 * cutoff && !steep)
            continue;
        // Golden-section refinement of the local minimum of |chi|.
        double a = -t_max + h * (i - 1), b = -t_max + h * (i + 1);
        const double gr = 0.618033988749894848;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = mag_at(x1), f2 = mag_at(x2);
        for (int it = 0; it < 80 && (b - a) > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
            if (f1 < f2) {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - gr * (b - a);
                f1 = mag_at(x1);
            } else {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + gr * (b - a);
                f2 = mag_at(x2);
            }
        }
        const double t_best = 0.5 * (a + b);
        if (mag_at(t_best) < cutoff)
            hits.emplace_back(sigma, t_best);
    }
    return hits;
}

namespace {

void push(std::vector<Condition>& v, std::string name, bool holds, double lhs, double rhs) {
    v.push_back({std::move(name), holds, lhs, rhs});
}

} // namespace

RegimeReport classify_regime(const HFunctionParams& params, double nu, double r,
                             const ScanOptions& scan) {
    params.validate();
    if (!(r > 1.0))
        throw std::invalid_argument("classify_regime: need 1 < r < inf");

    RegimeReport rep;
    rep.nu = nu;
    rep.r = r;
    rep.gamma_r = gamma_exponent(r);
    rep.constants = derive_constants(params);
    const DerivedConstants& c = rep.constants;

    const double lam = c.Delta * (1.0 - nu) + c.mu.real();  // Delta(1-nu)+Re(mu)
    const double half_minus_gamma = 0.5 - rep.gamma_r;
    const double scale = std::max({1.0, std::abs(c.Delta), std::abs(c.mu.real())});

    auto& cs = rep.conditions;
    const bool alpha_lt = c.alpha < 1.0 - nu;
    const bool lt_beta = 1.0 - nu < c.beta;
    const bool alpha0_lt = c.alpha0 < nu;
    const bool lt_beta0 = nu < c.beta0;
    const bool astar_zero = nearly_zero(c.a_star, scale);
    const bool astar_pos = c.a_star > 0.0 && !astar_zero;
    const bool delta_zero = nearly_zero(c.Delta, scale);
    const bool delta_pos = c.Delta > 0.0 && !delta_zero;
    const bool delta_neg = c.Delta < 0.0 && !delta_zero;
    const bool mu_zero = nearly_zero(c.mu.real(), scale);
    const bool lam_le0 = lam <= kEqTol * scale;
    const bool lam_eq0 = nearly_zero(lam, scale);
    const bool lam_le_gap = lam <= half_minus_gamma + kEqTol * scale;
    const bool r_is_2 = nearly_zero(r - 2.0);
    const bool alpha_finite = c.alpha > -kInf;
    const bool beta_finite = c.beta < kInf;

    push(cs, "alpha < 1-nu", alpha_lt, c.alpha, 1.0 - nu);
    push(cs, "1-nu < beta", lt_beta, 1.0 - nu, c.beta);
    push(cs, "alpha0 < nu", alpha0_lt, c.alpha0, nu);
    push(cs, "nu < beta0", lt_beta0, nu, c.beta0);
    push(cs, "a* = 0", astar_zero, c.a_star, 0.0);
    push(cs, "a* > 0", astar_pos, c.a_star, 0.0);
    push(cs, "Delta = 0", delta_zero, c.Delta, 0.0);
    push(cs, "Delta > 0", delta_pos, c.Delta, 0.0);
    push(cs, "Delta < 0", delta_neg, c.Delta, 0.0);
    push(cs, "Re(mu) = 0", mu_zero, c.mu.real(), 0.0);
    push(cs, "Delta(1-nu)+Re(mu) <= 0", lam_le0, lam, 0.0);
    push(cs, "Delta(1-nu)+Re(mu) = 0", lam_eq0, lam, 0.0);
    push(cs, "Delta(1-nu)+Re(mu) <= 1/2-gamma(r)", lam_le_gap, lam, half_minus_gamma);
    push(cs, "r = 2", r_is_2, r, 2.0);
    push(cs, "alpha > -inf", alpha_finite, c.alpha, -kInf);
    push(cs, "beta < inf", beta_finite, c.beta, kInf);

    const bool th21_core = astar_pos || (astar_zero && lam_le0);
    push(cs, "a* > 0 or (a* = 0 and Delta(1-nu)+Re(mu) <= 0)", th21_core, c.a_star, 0.0);

    bool th41_upper = false, th42_lower = false;
    if (!delta_zero) {
        const double bound = (c.mu.real() + 0.5) / c.Delta + 1.0;
        th41_upper = nu < std::min(c.beta0, bound);
        th42_lower = nu > std::max(c.alpha0, bound);
        push(cs, "nu < min(beta0, (Re(mu)+1/2)/Delta + 1)", th41_upper, nu,
             std::min(c.beta0, bound));
        push(cs, "nu > max(alpha0, (Re(mu)+1/2)/Delta + 1)", th42_lower, nu,
             std::max(c.alpha0, bound));
    }

    auto admit = [&](const char* id, bool ok) {
        if (ok)
            rep.applicable_theorems.emplace_back(id);
    };
    admit("2.1", r_is_2 && alpha_lt && lt_beta && th21_core);
    admit("2.2", alpha_lt && lt_beta && astar_zero && delta_zero && mu_zero);
    admit("2.3", astar_zero && delta_pos && alpha_finite && alpha_lt && lt_beta && lam_le_gap);
    admit("3.1", r_is_2 && alpha_lt && lt_beta && alpha0_lt && lt_beta0 && astar_zero && lam_eq0);
    admit("3.2", alpha_lt && lt_beta && alpha0_lt && lt_beta0 && astar_zero && delta_zero && mu_zero);
    admit("4.1", astar_zero && delta_pos && alpha_finite && alpha_lt && lt_beta &&
                     alpha0_lt && th41_upper && lam_le_gap);
    admit("4.2", astar_zero && delta_neg && alpha_lt && lt_beta && beta_finite &&
                     th42_lower && lt_beta0 && lam_le_gap);

    const bool invertible = rep.theorem_applies("3.1") || rep.theorem_applies("3.2") ||
                            rep.theorem_applies("4.1") || rep.theorem_applies("4.2");
    rep.inversion_branch = invertible ? InversionBranch::either : InversionBranch::none;
    {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "branch rule: Re(lambda) > nu*h-1 -> formula-1.11, "
                      "Re(lambda) < nu*h-1 -> formula-1.12 (h=1 threshold %.17g)",
                      nu - 1.0);
        rep.notes.emplace_back(buf);
    }

    if (alpha_lt && lt_beta) {
        try {
            rep.exceptional_hits =
                scan_exceptional_line(params, nu, scan.t_max, scan.steps, scan.threshold);
        } catch (const Error& e) {
            rep.notes.push_back(std::string("exceptional-set scan failed: ") + e.what());
        }
    } else {
        rep.notes.emplace_back(
            "exceptional-set scan skipped: line Re(s)=1-nu is outside (alpha, beta)");
    }
    return rep;
}

} // namespace hfox
