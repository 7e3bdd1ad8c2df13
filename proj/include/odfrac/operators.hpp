/// @file operators.hpp
/// @brief The operator calculus: fractional gradient and divergence,
///        mollification on both field kinds, and the two fractional-Laplacian
///        realizations (singular-sum and Fourier-multiplier).

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "odfrac/fields.hpp"

namespace odfrac {

/// Optional sink for non-fatal diagnostics (under-resolved kernels,
/// non-decayed boundaries). Null means silent.
using WarnSink = std::function<void(const std::string&)>;

/// d_s u(x,y) = (u(x) - u(y)) / |x - y|^s, zero on the diagonal.
/// The result carries gradient provenance (order s, base u).
OffDiagonalField frac_gradient(const ScalarField& u, double s);

/// div_s G(x_i) ~ sum_{j != i} 2 G(i,j) / |x_i - x_j|^{n+s} * w_j.
/// Terms are accumulated over symmetric offset pairs (i+m, i-m) so the odd
/// leading singularity cancels; gradient-provenance fields additionally get
/// the diagonal-cell defect correction (n = 1).
ScalarField frac_divergence(const OffDiagonalField& G, double s);

/// Discrete convolution with the analytic kernel, renormalized per node so
/// the discrete kernel mass is exactly 1 (constants are preserved exactly).
ScalarField mollify_scalar(const ScalarField& u, const Mollifier& m,
                           const WarnSink& warn = {});

/// Diagonal convolution phi * G(x,y) = int phi(z) G(x-z, y-z) dz.
/// Gradient-provenance fields are convolved through their base (the
/// operation commutes with d_s); plain fields use the in-range-window
/// renormalized pair convolution. Output is antisymmetric, zero on the
/// diagonal.
OffDiagonalField mollify_od(const OffDiagonalField& F, const Mollifier& m,
                            const WarnSink& warn = {});

/// Fused div_s d_s u via the symmetrized pair form
///   sum_j (2 u_i - u_{i+j} - u_{i-j}) / |z_j|^{n+2s} * w_j,
/// with the diagonal-cell defect correction and (n = 1) the analytic
/// far-field closure for the truncated kernel tail.
ScalarField frac_laplacian_integral(const ScalarField& u, double s);

/// Fourier-multiplier realization of (-Delta)^s on the zero-padded periodic
/// extension; multiplier (2 pi |k| / period)^{2s}, zero mode annihilated.
struct SpectralPlan {
    GridSpec grid;
    double s = 0.5;
    int pad = 8;  ///< period = pad * 2L (pad >= 1)

    SpectralPlan(const GridSpec& grid, double s, int pad = 8);
    ScalarField apply(const ScalarField& u, const WarnSink& warn = {}) const;
};

ScalarField frac_laplacian_spectral(const ScalarField& u, double s, int pad = 8,
                                    const WarnSink& warn = {});

/// Largest boundary magnitude relative to max |u|; spectral accuracy expects
/// this below ~1e-10.
double boundary_level(const ScalarField& u);

/// Defect of the punctured node-cell rule against the true integral for the
/// model integrand |z|^alpha on the unit lattice (window limit). Cached.
/// n = 1: plain |z|^alpha.  n = 2: isotropic |z|^alpha over the square lattice.
double cell_defect(int n, double alpha);

}  // namespace odfrac
