#ifndef HFOX_TESTKIT_HPP
#define HFOX_TESTKIT_HPP

#include "hfox/inversion.hpp"
#include "hfox/params.hpp"
#include "hfox/transform.hpp"
#include "hfox/types.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hfox {

/// A kernel together with a closed-form (f, g = Hf) pair and the (nu, r)
/// combinations at which the classifier admits at least one theorem.
struct OraclePair {
    std::string name;
    HFunctionParams params;
    std::string f_description;
    std::string g_description;
    std::function<Complex(double)> f;
    std::function<Complex(double)> g;
    std::vector<std::pair<double, double>> admissible_nu_r;

    // canonical sampling windows used by the reports and tests
    double f_min = 1e-7, f_max = 60.0, f_ppd = 512.0;
    double g_min = 1e-4, g_max = 1e3, g_ppd = 256.0;

    GridFunction sample_f(double nu) const;
    GridFunction sample_g(double nu) const;
};

/// Smooth compactly supported bump in log space: exp(-1/(1-u^2)) with
/// u = ln(t/center)/half_width_log, zero outside.
Complex smooth_bump(double t, double center = 1.0, double half_width_log = 1.3862943611198906);

/// The built-in corpus: exponential pair (e^{-xt} kernel), cosine pair,
/// and the half-order Bessel pair whose g side is loaded from the frozen
/// fixture under data_dir (defaults to $HFOX_DATA_DIR, then the configured
/// data directory).
std::vector<OraclePair> builtin_pairs(const std::string& data_dir = "");

/// Returns the directory builtin_pairs will read fixtures from.
std::string resolve_data_dir(const std::string& override_dir = "");

/// |Int f (Hg) - Int g (Hf)| / max(|Int f (Hg)|, floor), both transforms by
/// the multiplier path. Preconditions 1/r + 1/s >= 1 and
/// Delta(1-nu) + Re(mu) <= 1/2 - max(gamma(r), gamma(s)) are enforced
/// (InadmissibleError).
double bilinear_check(const HFunctionParams& params, const GridFunction& f,
                      const GridFunction& g, double nu, double r, double s,
                      double floor = 1e-30);

struct MethodResult {
    bool ok = false;
    double relative_l2 = 0.0;
    double seconds = 0.0;
    std::string error;  // empty when ok
};

struct RoundtripReport {
    std::string pair;
    double nu = 0.5;
    double r = 2.0;
    std::string forward_method;
    RegimeReport regime;
    bool outside_proven_regime = false;
    MethodResult forward_vs_oracle;  // forward output against the closed form g
    MethodResult mellin;             // invert_via_mellin against f
    MethodResult formula;            // invert_via_formula against f
    Complex formula_lambda{0, 0};
    std::string formula_branch;
    std::pair<double, double> interior;  // window of the error metrics
};

enum class ForwardMethod { direct, mellin };

/// Transform the pair's f by the chosen method, then run both inverters and
/// report interior-window errors, timings and the classifier verdict.
/// Component failures are recorded per method, never swallowed.
RoundtripReport roundtrip_report(const OraclePair& pair, double nu, double r,
                                 ForwardMethod method);

} // namespace hfox

#endif
