/// @file testlib.hpp
/// @brief Analytic test-function families: discrete representatives of the
///        Schwartz class, of the off-diagonal Schwartz class, and the
///        counterexample functions. Specs are a closed enumeration so every
///        suite is reproducible from configuration alone.

#pragma once

#include <string>
#include <vector>

#include "odfrac/fields.hpp"

namespace odfrac {

/// Scalar test-function spec.
///
/// gaussian(center, width, amplitude):  a * exp(-|x - c|^2 / w^2)
/// poly_gaussian(degree, width):        x_1^d * exp(-|x|^2 / w^2)
/// bump(center, radius):                exp(-1/(1 - r^2)) inside r < 1,
///                                      r = |x - c| / radius
/// indicator(lo, hi):                   1 on the open box (lo, hi)^n
/// constant(c), linear():               c resp. x_1
struct ScalarFnSpec {
    enum class Kind { Gaussian, PolyGaussian, Bump, Indicator, Constant, Linear };
    Kind kind = Kind::Gaussian;
    double center = 0.0;
    double width = 1.0;     // sigma / radius
    double amplitude = 1.0;
    int degree = 0;
    double lo = -1.0, hi = 1.0;

    static ScalarFnSpec gaussian(double center, double width, double amplitude);
    static ScalarFnSpec poly_gaussian(int degree, double width);
    static ScalarFnSpec bump(double center, double radius);
    static ScalarFnSpec indicator(double lo, double hi);
    static ScalarFnSpec constant(double c);
    static ScalarFnSpec linear();

    /// Smooth with rapid decay or compact support. Indicator and linear are
    /// not, and are barred from the Schwartz-only suites.
    bool schwartz_class() const;

    double evaluate(double x, double y, int dim) const;
    std::string label() const;
};

/// Off-diagonal test-function spec.
///
/// disjoint_bumps(b, c):     b(x)c(y) - b(y)c(x), supports disjoint with a
///                           positive gap, so the field vanishes identically
///                           near the diagonal.
/// separated_pair(f, g):     f(x)g(y) - f(y)g(x) for rapidly decaying f, g;
///                           zero on the diagonal yet with full-plane decay.
/// cutoff_gradient(u, s, d): eta(|x-y|/d) * (u(x)-u(y))/|x-y|^s with eta flat
///                           to all orders at 0 and equal to 1 past 1.
struct OdFnSpec {
    enum class Kind { DisjointBumps, SeparatedPair, CutoffGradient };
    Kind kind = Kind::DisjointBumps;
    ScalarFnSpec a, b;   // bumps / pair factors / base u (in `a`)
    double order = 0.5;  // s for cutoff_gradient
    double delta = 0.5;  // diagonal cutoff width

    static OdFnSpec disjoint_bumps(const ScalarFnSpec& b, const ScalarFnSpec& c);
    static OdFnSpec separated_pair(const ScalarFnSpec& f, const ScalarFnSpec& g);
    static OdFnSpec cutoff_gradient(const ScalarFnSpec& u, double s, double delta);

    /// True when the family member vanishes with all derivatives near the
    /// diagonal (all three kinds qualify by construction).
    bool diagonal_flat() const { return true; }

    double evaluate(double x0, double x1, double y0, double y1, int dim) const;
    std::string label() const;
};

/// Smooth cutoff used by cutoff_gradient: 0 at 0 (flat to all orders),
/// exp(1 - 1/t^2) on (0,1), 1 on [1, inf).
double diagonal_cutoff(double t);

/// Exact analytic sampling at the grid nodes.
ScalarField sample_scalar(const ScalarFnSpec& spec, const GridSpec& grid);
OffDiagonalField sample_od(const OdFnSpec& spec, const GridSpec& grid);

/// Least-squares slope of log|u| against log|x| over the tail region
/// |x| >= (1 - tail_fraction) * L. Returns -infinity when the tail is
/// identically zero ("decays faster than measurable").
double decay_exponent(const ScalarField& u, double tail_fraction);

}  // namespace odfrac
