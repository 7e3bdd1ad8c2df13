#include "odfrac/testlib.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace odfrac {

ScalarFnSpec ScalarFnSpec::gaussian(double center, double width, double amplitude) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian: width must be positive");
    ScalarFnSpec s;
    s.kind = Kind::Gaussian;
    s.center = center;
    s.width = width;
    s.amplitude = amplitude;
    return s;
}

ScalarFnSpec ScalarFnSpec::poly_gaussian(int degree, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("poly_gaussian: width must be positive");
    if (degree < 0) throw std::invalid_argument("poly_gaussian: degree must be >= 0");
    ScalarFnSpec s;
    s.kind = Kind::PolyGaussian;
    s.degree = degree;
    s.width = width;
    return s;
}

ScalarFnSpec ScalarFnSpec::bump(double center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("bump: radius must be positive");
    ScalarFnSpec s;
    s.kind = Kind::Bump;
    s.center = center;
    s.width = radius;
    return s;
}

ScalarFnSpec ScalarFnSpec::indicator(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("indicator: need lo < hi");
    ScalarFnSpec s;
    s.kind = Kind::Indicator;
    s.lo = lo;
    s.hi = hi;
    return s;
}

ScalarFnSpec ScalarFnSpec::constant(double c) {
    ScalarFnSpec s;
    s.kind = Kind::Constant;
    s.amplitude = c;
    return s;
}

ScalarFnSpec ScalarFnSpec::linear() {
    ScalarFnSpec s;
    s.kind = Kind::Linear;
    return s;
}

bool ScalarFnSpec::schwartz_class() const {
    return kind == Kind::Gaussian || kind == Kind::PolyGaussian || kind == Kind::Bump;
}

double ScalarFnSpec::evaluate(double x, double y, int dim) const {
    switch (kind) {
        case Kind::Gaussian: {
            double dx = x - center;
            double r2 = dx * dx;
            if (dim == 2) {
                double dy = y - center;
                r2 += dy * dy;
            }
            return amplitude * std::exp(-r2 / (width * width));
        }
        case Kind::PolyGaussian: {
            double r2 = x * x + (dim == 2 ? y * y : 0.0);
            return std::pow(x, degree) * std::exp(-r2 / (width * width));
        }
        case Kind::Bump: {
            double dx = x - center;
            double r2 = dx * dx;
            if (dim == 2) {
                double dy = y - center;
                r2 += dy * dy;
            }
            r2 /= width * width;
            if (r2 >= 1.0) return 0.0;
            return std::exp(-1.0 / (1.0 - r2));
        }
        case Kind::Indicator: {
            bool in = x > lo && x < hi;
            if (dim == 2) in = in && y > lo && y < hi;
            return in ? 1.0 : 0.0;
        }
        case Kind::Constant:
            return amplitude;
        case Kind::Linear:
            return x;
    }
    return 0.0;
}

std::string ScalarFnSpec::label() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Gaussian:
            os << "gaussian(" << center << "," << width << "," << amplitude << ")";
            break;
        case Kind::PolyGaussian:
            os << "poly_gaussian(" << degree << "," << width << ")";
            break;
        case Kind::Bump:
            os << "bump(" << center << "," << width << ")";
            break;
        case Kind::Indicator:
            os << "indicator(" << lo << "," << hi << ")";
            break;
        case Kind::Constant:
            os << "constant(" << amplitude << ")";
            break;
        case Kind::Linear:
            os << "linear";
            break;
    }
    return os.str();
}

OdFnSpec OdFnSpec::disjoint_bumps(const ScalarFnSpec& b, const ScalarFnSpec& c) {
    if (b.kind != ScalarFnSpec::Kind::Bump || c.kind != ScalarFnSpec::Kind::Bump)
        throw std::invalid_argument("disjoint_bumps: both factors must be bumps");
    if (std::abs(b.center - c.center) <= b.width + c.width)
        throw std::invalid_argument("disjoint_bumps: supports must be disjoint with a gap");
    OdFnSpec s;
    s.kind = Kind::DisjointBumps;
    s.a = b;
    s.b = c;
    return s;
}

OdFnSpec OdFnSpec::separated_pair(const ScalarFnSpec& f, const ScalarFnSpec& g) {
    if (!f.schwartz_class() || !g.schwartz_class())
        throw std::invalid_argument("separated_pair: factors must be Schwartz-class");
    OdFnSpec s;
    s.kind = Kind::SeparatedPair;
    s.a = f;
    s.b = g;
    return s;
}

OdFnSpec OdFnSpec::cutoff_gradient(const ScalarFnSpec& u, double sord, double delta) {
    if (!u.schwartz_class())
        throw std::invalid_argument("cutoff_gradient: base must be Schwartz-class");
    if (!(delta > 0.0)) throw std::invalid_argument("cutoff_gradient: delta must be positive");
    OdFnSpec s;
    s.kind = Kind::CutoffGradient;
    s.a = u;
    s.order = sord;
    s.delta = delta;
    return s;
}

double diagonal_cutoff(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return std::exp(1.0 - 1.0 / (t * t));
}

double OdFnSpec::evaluate(double x0, double x1, double y0, double y1, int dim) const {
    switch (kind) {
        case Kind::DisjointBumps:
        case Kind::SeparatedPair: {
            double fx = a.evaluate(x0, x1, dim), gy = b.evaluate(y0, y1, dim);
            double fy = a.evaluate(y0, y1, dim), gx = b.evaluate(x0, x1, dim);
            return fx * gy - fy * gx;
        }
        case Kind::CutoffGradient: {
            double dx = x0 - y0, dy = (dim == 2) ? x1 - y1 : 0.0;
            double r = std::sqrt(dx * dx + dy * dy);
            if (r == 0.0) return 0.0;
            double du = a.evaluate(x0, x1, dim) - a.evaluate(y0, y1, dim);
            return diagonal_cutoff(r / delta) * du / std::pow(r, order);
        }
    }
    return 0.0;
}

std::string OdFnSpec::label() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::DisjointBumps:
            os << "disjoint_bumps[" << a.label() << ";" << b.label() << "]";
            break;
        case Kind::SeparatedPair:
            os << "separated_pair[" << a.label() << ";" << b.label() << "]";
            break;
        case Kind::CutoffGradient:
            os << "cutoff_gradient[" << a.label() << ";s=" << order << ";d=" << delta << "]";
            break;
    }
    return os.str();
}

ScalarField sample_scalar(const ScalarFnSpec& spec, const GridSpec& grid) {
    ScalarField f = zero_scalar(grid);
    const std::int64_t K = grid.node_count();
    for (std::int64_t i = 0; i < K; ++i) {
        auto c = grid.coords(i);
        f.values[i] = spec.evaluate(c[0], c[1], grid.dim);
    }
    return f;
}

OffDiagonalField sample_od(const OdFnSpec& spec, const GridSpec& grid) {
    OffDiagonalField f = zero_od(grid);
    const std::int64_t K = grid.node_count();
    std::int64_t k = 0;
    for (std::int64_t i = 0; i < K; ++i) {
        auto ci = grid.coords(i);
        for (std::int64_t j = i + 1; j < K; ++j, ++k) {
            auto cj = grid.coords(j);
            f.upper[k] = spec.evaluate(ci[0], ci[1], cj[0], cj[1], grid.dim);
        }
    }
    return f;
}

double decay_exponent(const ScalarField& u, double tail_fraction) {
    if (!(tail_fraction > 0.0 && tail_fraction < 1.0))
        throw std::invalid_argument("decay_exponent: tail_fraction must be in (0,1)");
    const GridSpec& g = u.grid;
    const double r0 = (1.0 - tail_fraction) * g.half_width;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::int64_t m = 0;
    const std::int64_t K = g.node_count();
    for (std::int64_t i = 0; i < K; ++i) {
        auto c = g.coords(i);
        double r = (g.dim == 1) ? std::abs(c[0]) : std::hypot(c[0], c[1]);
        if (r < r0 || r == 0.0) continue;
        double a = std::abs(u.values[i]);
        if (a < 1e-300) continue;
        double lx = std::log(r), ly = std::log(a);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) return -std::numeric_limits<double>::infinity();
    double denom = m * sxx - sx * sx;
    if (denom == 0.0) return -std::numeric_limits<double>::infinity();
    return (m * sxy - sx * sy) / denom;
}

}  // namespace odfrac
