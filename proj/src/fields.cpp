#include "odfrac/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace odfrac {

std::int64_t GridSpec::node_count() const {
    std::int64_t n = points_per_axis;
    return dim == 1 ? n : n * n;
}

std::array<int, 2> GridSpec::unflatten(std::int64_t flat) const {
    if (dim == 1) return {static_cast<int>(flat), 0};
    return {static_cast<int>(flat / points_per_axis),
            static_cast<int>(flat % points_per_axis)};
}

std::int64_t GridSpec::flatten(const std::array<int, 2>& idx) const {
    if (dim == 1) return idx[0];
    return static_cast<std::int64_t>(idx[0]) * points_per_axis + idx[1];
}

std::array<double, 2> GridSpec::coords(std::int64_t flat) const {
    auto idx = unflatten(flat);
    return {axis_nodes[idx[0]], dim == 2 ? axis_nodes[idx[1]] : 0.0};
}

double GridSpec::weight(std::int64_t flat) const {
    auto idx = unflatten(flat);
    double w = axis_weights[idx[0]];
    if (dim == 2) w *= axis_weights[idx[1]];
    return w;
}

double GridSpec::distance(std::int64_t a, std::int64_t b) const {
    auto ia = unflatten(a);
    auto ib = unflatten(b);
    if (dim == 1) return std::abs(ia[0] - ib[0]) * spacing;
    double dx = (ia[0] - ib[0]) * spacing;
    double dy = (ia[1] - ib[1]) * spacing;
    return std::sqrt(dx * dx + dy * dy);
}

bool GridSpec::same_as(const GridSpec& o) const {
    return dim == o.dim && half_width == o.half_width &&
           points_per_axis == o.points_per_axis;
}

GridSpec make_grid(int dim, double half_width, int points_per_axis) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("make_grid: dim must be 1 or 2");
    if (!(half_width > 0.0))
        throw std::invalid_argument("make_grid: half_width must be positive");
    if (points_per_axis < 2)
        throw std::invalid_argument("make_grid: points_per_axis must be >= 2");

    GridSpec g;
    g.dim = dim;
    g.half_width = half_width;
    g.points_per_axis = points_per_axis;
    g.spacing = 2.0 * half_width / (points_per_axis - 1);
    g.axis_nodes.resize(points_per_axis);
    g.axis_weights.resize(points_per_axis);
    for (int i = 0; i < points_per_axis; ++i) {
        g.axis_nodes[i] = -half_width + i * g.spacing;
        g.axis_weights[i] = g.spacing;
    }
    g.axis_weights.front() = 0.5 * g.spacing;
    g.axis_weights.back() = 0.5 * g.spacing;
    return g;
}

ScalarField zero_scalar(const GridSpec& grid) {
    return {grid, std::vector<double>(grid.node_count(), 0.0)};
}

ScalarField constant_scalar(const GridSpec& grid, double c) {
    return {grid, std::vector<double>(grid.node_count(), c)};
}

ScalarField subtract(const ScalarField& u, const ScalarField& v) {
    if (!u.grid.same_as(v.grid))
        throw std::invalid_argument("subtract: grid mismatch");
    ScalarField out = u;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= v.values[i];
    return out;
}

ScalarField scale(const ScalarField& u, double a) {
    ScalarField out = u;
    for (double& v : out.values) v *= a;
    return out;
}

std::int64_t OffDiagonalField::upper_index(std::int64_t i, std::int64_t j) const {
    const std::int64_t K = grid.node_count();
    return i * K - i * (i + 1) / 2 + (j - i - 1);
}

double OffDiagonalField::value(std::int64_t i, std::int64_t j) const {
    if (i == j) return 0.0;
    if (i < j) return upper[upper_index(i, j)];
    return -upper[upper_index(j, i)];
}

void OffDiagonalField::set(std::int64_t i, std::int64_t j, double v) {
    if (i == j) return;
    if (i < j)
        upper[upper_index(i, j)] = v;
    else
        upper[upper_index(j, i)] = -v;
}

OffDiagonalField zero_od(const GridSpec& grid) {
    const std::int64_t K = grid.node_count();
    return {grid, std::vector<double>(static_cast<std::size_t>(K * (K - 1) / 2), 0.0), {}};
}

OffDiagonalField od_scale(const OffDiagonalField& f, double a) {
    OffDiagonalField out = f;
    for (double& v : out.upper) v *= a;
    out.provenance.reset();  // scaled field no longer matches the stored base
    if (f.provenance) {
        GradientProvenance p = *f.provenance;
        for (double& b : p.base) b *= a;
        out.provenance = std::move(p);
    }
    return out;
}

OffDiagonalField od_subtract(const OffDiagonalField& f, const OffDiagonalField& g) {
    if (!f.grid.same_as(g.grid))
        throw std::invalid_argument("od_subtract: grid mismatch");
    OffDiagonalField out = f;
    out.provenance.reset();
    for (std::size_t i = 0; i < out.upper.size(); ++i) out.upper[i] -= g.upper[i];
    if (f.provenance && g.provenance &&
        f.provenance->order == g.provenance->order) {
        GradientProvenance p = *f.provenance;
        for (std::size_t i = 0; i < p.base.size(); ++i)
            p.base[i] -= g.provenance->base[i];
        out.provenance = std::move(p);
    }
    return out;
}

OffDiagonalField antisymmetrize(const GridSpec& grid, std::span<const double> raw) {
    const std::int64_t K = grid.node_count();
    if (static_cast<std::int64_t>(raw.size()) != K * K)
        throw std::invalid_argument("antisymmetrize: raw must be K x K");
    for (double v : raw)
        if (!std::isfinite(v))
            throw std::invalid_argument("antisymmetrize: non-finite input");
    OffDiagonalField out = zero_od(grid);
    std::int64_t k = 0;
    for (std::int64_t i = 0; i < K; ++i)
        for (std::int64_t j = i + 1; j < K; ++j, ++k)
            out.upper[k] = 0.5 * (raw[i * K + j] - raw[j * K + i]);
    return out;
}

namespace {

// Compensated accumulation; the pair sums below are the exactness-critical
// reductions (adjointness must close at 1e-10 of scale).
struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

double pair_scalar(const ScalarField& u, const ScalarField& v) {
    if (!u.grid.same_as(v.grid))
        throw std::invalid_argument("pair_scalar: grid mismatch");
    const std::int64_t K = u.grid.node_count();
    Kahan acc;
    for (std::int64_t i = 0; i < K; ++i)
        acc.add(u.values[i] * v.values[i] * u.grid.weight(i));
    return acc.sum;
}

double pair_od(const OffDiagonalField& F, const OffDiagonalField& G) {
    if (!F.grid.same_as(G.grid))
        throw std::invalid_argument("pair_od: grid mismatch");
    const GridSpec& g = F.grid;
    const std::int64_t K = g.node_count();
    const int n = g.dim;
    Kahan acc;
    std::int64_t k = 0;
    for (std::int64_t i = 0; i < K; ++i) {
        const double wi = g.weight(i);
        for (std::int64_t j = i + 1; j < K; ++j, ++k) {
            const double d = g.distance(i, j);
            const double dn = (n == 1) ? d : d * d;
            // both orientations: F and G flip sign together
            acc.add(2.0 * F.upper[k] * G.upper[k] * wi * g.weight(j) / dn);
        }
    }
    return acc.sum;
}

FracParams FracParams::sobolev(double s, double p, int n) {
    if (!(s > 0.0 && s < 1.0) || p < 1.0)
        throw std::invalid_argument("FracParams::sobolev: need s in (0,1), p >= 1");
    if (!(s * p < n))
        throw std::invalid_argument("FracParams::sobolev: requires s*p < n");
    FracParams fp;
    fp.s = s;
    fp.p = p;
    fp.n = n;
    fp.q = 1.0 / (1.0 / p - s / n);
    return fp;
}

FracParams FracParams::holder(double s, double p, int n) {
    if (!(s > 0.0 && s < 1.0) || p < 1.0)
        throw std::invalid_argument("FracParams::holder: need s in (0,1), p >= 1");
    if (!(s * p > n))
        throw std::invalid_argument("FracParams::holder: requires s*p > n");
    FracParams fp;
    fp.s = s;
    fp.p = p;
    fp.n = n;
    fp.q = p;
    double a = fp.alpha();
    if (!(a > 0.0 && a < 1.0))
        throw std::invalid_argument("FracParams::holder: alpha = s - n/p outside (0,1)");
    return fp;
}

namespace {

// 1D unit-mass bump normalization: 1 / int_{-1}^{1} exp(-1/(1-t^2)) dt.
// 2D: 1 / int_{|t|<1} exp(-1/(1-|t|^2)) dt. Computed once by quadrature.
double bump_mass_1d() {
    static const double m = [] {
        const int n = 20000;
        double sum = 0.0;
        double hh = 2.0 / n;
        for (int i = 0; i < n; ++i) {
            double t = -1.0 + (i + 0.5) * hh;
            sum += std::exp(-1.0 / (1.0 - t * t)) * hh;
        }
        return sum;
    }();
    return m;
}

double bump_mass_2d() {
    static const double m = [] {
        const int n = 20000;  // radial midpoint rule, 2*pi*r*f(r)
        double sum = 0.0;
        double hh = 1.0 / n;
        for (int i = 0; i < n; ++i) {
            double r = (i + 0.5) * hh;
            sum += 2.0 * 3.14159265358979323846 * r *
                   std::exp(-1.0 / (1.0 - r * r)) * hh;
        }
        return sum;
    }();
    return m;
}

}  // namespace

double Mollifier::kernel(double r, int n) const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("Mollifier: epsilon must be positive");
    const double t = r / epsilon;
    const double pi = 3.14159265358979323846;
    switch (shape) {
        case Shape::Gaussian: {
            double norm = (n == 1) ? std::sqrt(pi) : pi;
            return std::exp(-t * t) / (norm * std::pow(epsilon, n));
        }
        case Shape::Bump: {
            if (t >= 1.0) return 0.0;
            double mass = (n == 1) ? bump_mass_1d() : bump_mass_2d();
            return std::exp(-1.0 / (1.0 - t * t)) / (mass * std::pow(epsilon, n));
        }
    }
    return 0.0;
}

}  // namespace odfrac
