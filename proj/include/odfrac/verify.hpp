/// @file verify.hpp
/// @brief Theorem-by-theorem verification suites: residuals, fitted
///        constants, convergence orders, verdicts.

#pragma once

#include <string>
#include <vector>

#include "odfrac/report.hpp"
#include "odfrac/testlib.hpp"

namespace odfrac {

/// Per-suite configuration. `defaults(suite)` carries the calibrated grids,
/// tolerances, and the committed baseline constants the regressions hold to.
struct SuiteConfig {
    std::string suite;
    int dim = 1;
    double half_width = 10.0;
    std::vector<int> grid_ladder = {128, 256, 512};
    std::vector<double> s_values = {0.5};
    double p = 1.0;
    double q = 2.0;
    double tail_fraction = 0.5;

    double tol_exact = 1e-10;      ///< rounding-level identities
    double tol_dilation = 0.01;    ///< ratio invariance under matched dilation
    double tol_stability = 0.05;   ///< ratio spread across the grid ladder
    double tol_ratio_std = 0.02;   ///< laplacian ratio-field relative std
    double tol_kappa_u = 0.02;     ///< kappa agreement across test functions
    double tol_kappa_theory = 0.03;
    double tol_fit_residual = 0.01;
    double decay_threshold = -4.0;

    double baseline = 0.0;   ///< committed empirical constant (0 = unset)
    double baseline2 = 0.0;  ///< committed constant for the n = 2 regime
    double baseline_slack = 0.05;

    std::vector<double> epsilons = {0.05, 0.1, 0.2, 0.4, 0.8, 1.6};
    std::vector<double> R_ladder = {10.0, 100.0, 1000.0, 10000.0};
    int spectral_pad = 8;
    int gfamily_size = 16;
    int max_cases = 0;  ///< 0 = full family
    unsigned seed = 12345;

    static SuiteConfig defaults(const std::string& suite);
};

/// Names of all suites, in `verify all` execution order.
std::vector<std::string> suite_names();

VerificationReport suite_adjointness(const SuiteConfig& cfg);
VerificationReport suite_laplacian(const SuiteConfig& cfg);
VerificationReport suite_bb_l1(const SuiteConfig& cfg);
VerificationReport suite_sobolev(const SuiteConfig& cfg);
VerificationReport suite_poincare(const SuiteConfig& cfg);
VerificationReport suite_holder(const SuiteConfig& cfg);
VerificationReport suite_wsp_od(const SuiteConfig& cfg);
VerificationReport suite_sum_space(const SuiteConfig& cfg);
VerificationReport suite_counterexample(const SuiteConfig& cfg);
VerificationReport suite_decay(const SuiteConfig& cfg);
VerificationReport suite_convergence(const SuiteConfig& cfg);

/// Dispatch by suite name.
VerificationReport run_suite(const SuiteConfig& cfg);

/// Richardson estimate of the observed order from a summary-value ladder
/// (>= 3 grids). Returns +infinity when successive differences sit at the
/// rounding floor ("exact at nodes" sentinel).
double observed_order(const std::vector<double>& values, double floor = 1e-13);

/// Observed order for one operator on a grid ladder.
/// op is one of: "pair_scalar", "frac_gradient", "frac_laplacian_integral".
VerificationReport convergence_study(const std::string& op, const ScalarFnSpec& u,
                                     double s, const std::vector<int>& ladder,
                                     double half_width = 10.0);

/// The default scalar and off-diagonal test families.
std::vector<ScalarFnSpec> default_scalar_family(int dim);
std::vector<OdFnSpec> default_od_family();

}  // namespace odfrac
