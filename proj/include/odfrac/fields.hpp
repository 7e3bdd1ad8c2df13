/// @file fields.hpp
/// @brief Truncated uniform tensor grids, sampled scalar and off-diagonal
///        fields, quadrature weights, and the basic pairings.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace odfrac {

/// Uniform tensor grid on [-L, L]^n with trapezoidal quadrature weights.
/// Nodes per axis: x_i = -L + i*h, h = 2L/(N-1).
struct GridSpec {
    int dim = 1;               ///< spatial dimension n (1 or 2)
    double half_width = 1.0;   ///< L
    int points_per_axis = 2;   ///< N
    double spacing = 2.0;      ///< h = 2L/(N-1)

    std::vector<double> axis_nodes;    ///< size N
    std::vector<double> axis_weights;  ///< trapezoid: h/2 at ends, h inside

    /// Total number of nodes, N^dim.
    std::int64_t node_count() const;

    /// Multi-index of a flat node index (row-major, axis 0 slowest).
    std::array<int, 2> unflatten(std::int64_t flat) const;
    std::int64_t flatten(const std::array<int, 2>& idx) const;

    /// Coordinates of a node.
    std::array<double, 2> coords(std::int64_t flat) const;

    /// Tensor quadrature weight of a node.
    double weight(std::int64_t flat) const;

    /// Euclidean distance between two nodes.
    double distance(std::int64_t a, std::int64_t b) const;

    bool same_as(const GridSpec& other) const;
};

/// Builds a grid. dim must be 1 or 2, half_width > 0, points_per_axis >= 2.
GridSpec make_grid(int dim, double half_width, int points_per_axis);

/// Real values sampled at every grid node.
struct ScalarField {
    GridSpec grid;
    std::vector<double> values;  ///< size grid.node_count()

    double& operator[](std::int64_t i) { return values[i]; }
    double operator[](std::int64_t i) const { return values[i]; }
};

ScalarField zero_scalar(const GridSpec& grid);
ScalarField constant_scalar(const GridSpec& grid, double c);

/// u - v on a shared grid.
ScalarField subtract(const ScalarField& u, const ScalarField& v);
ScalarField scale(const ScalarField& u, double a);

/// Provenance tag for fields produced by the fractional gradient: the
/// difference-quotient profile order and the base scalar values. Operators
/// use it for diagonal-band corrections and boundary-faithful convolution.
struct GradientProvenance {
    double order = 0.0;             ///< s in (u(x)-u(y))/|x-y|^s
    std::vector<double> base;       ///< node values of the base field
};

/// Antisymmetric values on ordered node pairs (i, j), i != j; zero on the
/// diagonal. Storage holds one orientation (i < j); the accessor supplies
/// the sign, so antisymmetry is exact by construction.
struct OffDiagonalField {
    GridSpec grid;
    std::vector<double> upper;  ///< K*(K-1)/2 entries, pairs with i < j
    std::optional<GradientProvenance> provenance;

    std::int64_t pair_count() const { return static_cast<std::int64_t>(upper.size()); }

    /// Index into `upper` for i < j.
    std::int64_t upper_index(std::int64_t i, std::int64_t j) const;

    /// Signed value at the ordered pair (i, j); 0 when i == j.
    double value(std::int64_t i, std::int64_t j) const;

    /// Sets both orientations at once (stores at (min,max) with sign).
    void set(std::int64_t i, std::int64_t j, double v);
};

OffDiagonalField zero_od(const GridSpec& grid);
OffDiagonalField od_scale(const OffDiagonalField& f, double a);
OffDiagonalField od_subtract(const OffDiagonalField& f, const OffDiagonalField& g);

/// Odd projection of raw pair-indexed values: (F(x,y) - F(y,x))/2.
/// `raw` is dense row-major K x K; the diagonal is ignored.
OffDiagonalField antisymmetrize(const GridSpec& grid, std::span<const double> raw);

/// Discrete pairing  sum_i u_i v_i w_i  ~  \int u v dx.
double pair_scalar(const ScalarField& u, const ScalarField& v);

/// Discrete off-diagonal pairing
///   sum_{i != j} F(i,j) G(i,j) w_i w_j / |x_i - x_j|^n,
/// the identification of L^p_od fields with off-diagonal distributions.
double pair_od(const OffDiagonalField& F, const OffDiagonalField& G);

/// Exponent bundle governing the operators and inequalities.
struct FracParams {
    double s = 0.5;
    double p = 2.0;
    double q = 2.0;
    int n = 1;

    /// Subcritical regime: requires s*p < n, sets 1/q = 1/p - s/n.
    static FracParams sobolev(double s, double p, int n);
    /// Supercritical regime: requires s*p > n; alpha() = s - n/p in (0,1).
    static FracParams holder(double s, double p, int n);

    double alpha() const { return s - static_cast<double>(n) / p; }
};

/// Unit-mass smoothing kernel with scale epsilon.
struct Mollifier {
    enum class Shape { Gaussian, Bump };
    Shape shape = Shape::Gaussian;
    double epsilon = 1.0;

    /// phi_eps(z) for |z| = r in dimension n.
    double kernel(double r, int n) const;
};

}  // namespace odfrac
