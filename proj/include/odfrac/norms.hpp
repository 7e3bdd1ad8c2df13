/// @file norms.hpp
/// @brief Every norm, seminorm, and functional the estimates quantify over.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "odfrac/fields.hpp"

namespace odfrac {

struct NormResult {
    double value = 0.0;
    std::string kind;
    FracParams params;
    int points_per_axis = 0;
    double half_width = 0.0;

    /// CSV row `kind,s,p,q,n,N,L,value`.
    std::string csv_row() const;
};

/// (sum |u|^p w)^{1/p}; p = infinity gives max |u|.
double lp_norm(const ScalarField& u, double p);

/// (sum_{i != j} |F(i,j)|^p w_i w_j / |x_i-x_j|^n)^{1/p}; p = infinity gives
/// max |F|. Gradient-provenance fields receive the diagonal-band defect
/// correction (n = 1 any p; n = 2 for p = 2).
double lp_od_norm(const OffDiagonalField& F, double p);

/// ||d_s u||_{L^p_od}; the same code path as lp_od_norm(frac_gradient(u,s), p).
double gagliardo_seminorm(const ScalarField& u, double s, double p);

/// D_{s,q}(u)(x) = (int |d_s u(x,y)|^q dy/|x-y|^n)^{1/q}, pointwise field.
ScalarField dsq_functional(const ScalarField& u, double s, double q);

/// || D_{s,q} u ||_{L^p}.
double wspq_norm(const ScalarField& u, double s, double p, double q);

/// Minimizing shift: returns (c*, ||u - c*||_{L^q}); q = 2 uses the weighted
/// mean, otherwise bisection on the strictly monotone subgradient.
std::pair<double, double> best_constant_shift(const ScalarField& u, double q);

/// max_{i != j} |u_i - u_j| / |x_i - x_j|^alpha.
double holder_seminorm(const ScalarField& u, double alpha);

/// Axis-aligned sub-box of a grid, by inclusive per-axis node ranges.
struct CubeSpec {
    std::array<int, 2> lo{0, 0};
    std::array<int, 2> hi{0, 0};
};

/// ||u - avg_Q u||_{L^q(Q)} / ( iint_{QxQ} |u(x)-u(y)|^p / |x-y|^{n+sp} )^{1/p},
/// both restricted to cube-interior pairs. 0/0 gives 0; x/0 with x > 0 gives
/// +infinity.
double cube_poincare_ratio(const ScalarField& u, const CubeSpec& cube, double s,
                           double p, double q);

/// max over the family of |<d_{1/2}u, G>| / ||div_{1/2} G||_{L^2}; a lower
/// bound for the dual H^{-1/2}_od size of d_{1/2} u.
double dual_hminushalf_estimate(const ScalarField& u,
                                const std::vector<OffDiagonalField>& g_family);

/// Upper bound for ||d_{1/2}u||_{L^1_od + H^{-1/2}_od} via the mollification
/// split  d_{1/2}u = d_{1/2}(u - u_eps) + d_{1/2}(u_eps); the two pure
/// decompositions are included as eps = inf (pure L^1) and eps = 0 (pure
/// H^{-1/2}) candidates. Returns (bound, chosen eps).
std::pair<double, double> sum_space_upper(const ScalarField& u,
                                          const std::vector<double>& epsilons);

/// Exact value of  iint_{[-R,R]^2} |chi(x)-chi(y)|^2 / |x-y| dx dy  for
/// chi = indicator(-1,1), by piecewise integration (no grid):
///   4 [ (R+1) ln(R+1) - (R-1) ln(R-1) - 2 ln 2 ].
double chi_counterexample(double R);

}  // namespace odfrac
