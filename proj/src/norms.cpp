#include "odfrac/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "odfrac/field_io.hpp"
#include "odfrac/operators.hpp"

namespace odfrac {

namespace {

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-node |slope|^p h^{p(1-s)} band weights for a gradient-provenance field,
// estimated from the field's own near-diagonal values. Zero for edge nodes.
std::vector<double> band_slope_powers(const OffDiagonalField& F, double p) {
    const GridSpec& g = F.grid;
    const double s = F.provenance->order;
    const double h = g.spacing;
    const std::int64_t K = g.node_count();
    const int N = g.points_per_axis;
    std::vector<double> out(K, 0.0);
    if (g.dim == 1) {
        for (std::int64_t i = 1; i + 1 < K; ++i) {
            double slope =
                0.5 * (std::abs(F.value(i, i - 1)) + std::abs(F.value(i, i + 1))) /
                std::pow(h, 1.0 - s);
            out[i] = std::pow(slope * std::pow(h, 1.0 - s), p);  // = |slope|^p h^{p(1-s)}
        }
    } else {
        // p = 2 only: |grad u|^2 h^{2(1-s)} from per-axis differences
        for (std::int64_t i = 0; i < K; ++i) {
            auto c = g.unflatten(i);
            if (c[0] == 0 || c[0] == N - 1 || c[1] == 0 || c[1] == N - 1) continue;
            double gx = 0.5 * (std::abs(F.value(i, g.flatten({c[0] + 1, c[1]}))) +
                               std::abs(F.value(i, g.flatten({c[0] - 1, c[1]}))));
            double gy = 0.5 * (std::abs(F.value(i, g.flatten({c[0], c[1] + 1}))) +
                               std::abs(F.value(i, g.flatten({c[0], c[1] - 1}))));
            out[i] = gx * gx + gy * gy;  // already carries h^{2(1-s)} through F
        }
    }
    return out;
}

// Adds the diagonal-band defect correction to an accumulated p-th power.
double band_correction(const OffDiagonalField& F, double p) {
    if (!F.provenance) return 0.0;
    const GridSpec& g = F.grid;
    const double s = F.provenance->order;
    if (g.dim == 2 && p != 2.0) return 0.0;  // not needed by any suite
    const double alpha = p * (1.0 - s) - g.dim;
    if (!(alpha > -double(g.dim))) return 0.0;
    const double D =
        (g.dim == 1) ? cell_defect(1, alpha) : 0.5 * cell_defect(2, alpha);
    auto sp = band_slope_powers(F, p);
    Kahan acc;
    for (std::int64_t i = 0; i < g.node_count(); ++i)
        if (sp[i] != 0.0) acc.add(g.weight(i) * sp[i]);
    return acc.sum * D;
}

}  // namespace

std::string NormResult::csv_row() const {
    std::ostringstream os;
    os << kind << ',' << format_double(params.s) << ',' << format_double(params.p) << ','
       << format_double(params.q) << ',' << params.n << ',' << points_per_axis << ','
       << format_double(half_width) << ',' << format_double(value);
    return os.str();
}

double lp_norm(const ScalarField& u, double p) {
    if (p == kInf) {
        double m = 0.0;
        for (double v : u.values) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    Kahan acc;
    const std::int64_t K = u.grid.node_count();
    for (std::int64_t i = 0; i < K; ++i)
        acc.add(std::pow(std::abs(u.values[i]), p) * u.grid.weight(i));
    return std::pow(acc.sum, 1.0 / p);
}

double lp_od_norm(const OffDiagonalField& F, double p) {
    if (p == kInf) {
        double m = 0.0;
        for (double v : F.upper) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw std::invalid_argument("lp_od_norm: p must be >= 1");
    const GridSpec& g = F.grid;
    const std::int64_t K = g.node_count();
    const int n = g.dim;
    Kahan acc;
    std::int64_t k = 0;
    for (std::int64_t i = 0; i < K; ++i) {
        const double wi = g.weight(i);
        for (std::int64_t j = i + 1; j < K; ++j, ++k) {
            const double v = F.upper[k];
            if (v == 0.0) continue;
            const double d = g.distance(i, j);
            const double dn = (n == 1) ? d : d * d;
            acc.add(2.0 * std::pow(std::abs(v), p) * wi * g.weight(j) / dn);
        }
    }
    double total = acc.sum + band_correction(F, p);
    return std::pow(total, 1.0 / p);
}

double gagliardo_seminorm(const ScalarField& u, double s, double p) {
    if (!(s > 0.0 && s < 1.0))
        throw std::invalid_argument("gagliardo_seminorm: s must be in (0,1)");
    return lp_od_norm(frac_gradient(u, s), p);
}

ScalarField dsq_functional(const ScalarField& u, double s, double q) {
    if (!(s > 0.0 && s < 1.0))
        throw std::invalid_argument("dsq_functional: s must be in (0,1)");
    if (!(q >= 1.0)) throw std::invalid_argument("dsq_functional: q must be >= 1");
    OffDiagonalField F = frac_gradient(u, s);
    const GridSpec& g = u.grid;
    const std::int64_t K = g.node_count();
    const int n = g.dim;
    // per-node band weights matching lp_od_norm's correction (Fubini identity)
    std::vector<double> band(K, 0.0);
    if (n == 1 || q == 2.0) {
        const double alpha = q * (1.0 - s) - n;
        if (alpha > -double(n)) {
            const double D = (n == 1) ? cell_defect(1, alpha) : 0.5 * cell_defect(2, alpha);
            auto sp = band_slope_powers(F, q);
            for (std::int64_t i = 0; i < K; ++i) band[i] = sp[i] * D;
        }
    }
    ScalarField out = zero_scalar(g);
    for (std::int64_t i = 0; i < K; ++i) {
        Kahan acc;
        for (std::int64_t j = 0; j < K; ++j) {
            if (j == i) continue;
            const double v = F.value(i, j);
            if (v == 0.0) continue;
            const double d = g.distance(i, j);
            const double dn = (n == 1) ? d : d * d;
            acc.add(std::pow(std::abs(v), q) * g.weight(j) / dn);
        }
        out.values[i] = std::pow(acc.sum + band[i], 1.0 / q);
    }
    return out;
}

double wspq_norm(const ScalarField& u, double s, double p, double q) {
    return lp_norm(dsq_functional(u, s, q), p);
}

std::pair<double, double> best_constant_shift(const ScalarField& u, double q) {
    if (!(q > 1.0) || q == kInf)
        throw std::invalid_argument("best_constant_shift: q must be in (1, inf)");
    const std::int64_t K = u.grid.node_count();
    double c = 0.0;
    if (q == 2.0) {
        Kahan num, den;
        for (std::int64_t i = 0; i < K; ++i) {
            num.add(u.values[i] * u.grid.weight(i));
            den.add(u.grid.weight(i));
        }
        c = num.sum / den.sum;
    } else {
        double lo = *std::min_element(u.values.begin(), u.values.end());
        double hi = *std::max_element(u.values.begin(), u.values.end());
        if (lo == hi) {
            c = lo;
        } else {
            // subgradient of c -> ||u - c||_q^q is strictly increasing in c
            auto grad = [&](double cc) {
                Kahan acc;
                for (std::int64_t i = 0; i < K; ++i) {
                    double d = cc - u.values[i];
                    if (d != 0.0)
                        acc.add(u.grid.weight(i) * std::pow(std::abs(d), q - 1.0) *
                                (d > 0 ? 1.0 : -1.0));
                }
                return acc.sum;
            };
            for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi));
                 ++it) {
                double mid = 0.5 * (lo + hi);
                (grad(mid) > 0.0 ? hi : lo) = mid;
            }
            c = 0.5 * (lo + hi);
        }
    }
    ScalarField shifted = subtract(u, constant_scalar(u.grid, c));
    return {c, lp_norm(shifted, q)};
}

double holder_seminorm(const ScalarField& u, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("holder_seminorm: alpha must be in (0,1]");
    const GridSpec& g = u.grid;
    const std::int64_t K = g.node_count();
    double m = 0.0;
    for (std::int64_t i = 0; i < K; ++i)
        for (std::int64_t j = i + 1; j < K; ++j)
            m = std::max(m, std::abs(u.values[i] - u.values[j]) /
                                std::pow(g.distance(i, j), alpha));
    return m;
}

double cube_poincare_ratio(const ScalarField& u, const CubeSpec& cube, double s,
                           double p, double q) {
    const GridSpec& g = u.grid;
    for (int a = 0; a < g.dim; ++a) {
        if (cube.lo[a] < 0 || cube.hi[a] >= g.points_per_axis ||
            cube.hi[a] - cube.lo[a] + 1 < 4)
            throw std::invalid_argument("cube_poincare_ratio: degenerate cube");
    }
    const int Nc = cube.hi[0] - cube.lo[0] + 1;
    if (g.dim == 2 && cube.hi[1] - cube.lo[1] + 1 != Nc)
        throw std::invalid_argument("cube_poincare_ratio: cube must be square");

    // restriction to the cube as its own grid (same spacing, own weights)
    GridSpec sub = make_grid(g.dim, 0.5 * (Nc - 1) * g.spacing, Nc);
    ScalarField ru = zero_scalar(sub);
    for (std::int64_t i = 0; i < sub.node_count(); ++i) {
        auto ci = sub.unflatten(i);
        std::array<int, 2> full = {cube.lo[0] + ci[0],
                                   g.dim == 2 ? cube.lo[1] + ci[1] : 0};
        ru.values[i] = u.values[g.flatten(full)];
    }

    Kahan mean_num, mean_den;
    for (std::int64_t i = 0; i < sub.node_count(); ++i) {
        mean_num.add(ru.values[i] * sub.weight(i));
        mean_den.add(sub.weight(i));
    }
    ScalarField centered =
        subtract(ru, constant_scalar(sub, mean_num.sum / mean_den.sum));
    double lhs = lp_norm(centered, q);
    double rhs = gagliardo_seminorm(ru, s, p);
    if (rhs == 0.0) return lhs == 0.0 ? 0.0 : kInf;
    return lhs / rhs;
}

double dual_hminushalf_estimate(const ScalarField& u,
                                const std::vector<OffDiagonalField>& g_family) {
    if (g_family.empty())
        throw std::invalid_argument("dual_hminushalf_estimate: empty family");
    OffDiagonalField du = frac_gradient(u, 0.5);
    double best = 0.0;
    for (const OffDiagonalField& G : g_family) {
        double denom = lp_norm(frac_divergence(G, 0.5), 2.0);
        if (denom == 0.0) continue;
        best = std::max(best, std::abs(pair_od(du, G)) / denom);
    }
    return best;
}

std::pair<double, double> sum_space_upper(const ScalarField& u,
                                          const std::vector<double>& epsilons) {
    if (epsilons.empty())
        throw std::invalid_argument("sum_space_upper: empty epsilon list");
    // pure-L1 candidate (eps -> inf limit of the split)
    double best = lp_od_norm(frac_gradient(u, 0.5), 1.0);
    double best_eps = kInf;
    // pure-H candidate (eps -> 0 limit)
    {
        double t2 = best_constant_shift(u, 2.0).second;
        if (t2 < best) {
            best = t2;
            best_eps = 0.0;
        }
    }
    for (double eps : epsilons) {
        if (!(eps > 0.0)) throw std::invalid_argument("sum_space_upper: eps must be > 0");
        Mollifier m{Mollifier::Shape::Gaussian, eps};
        ScalarField ue = mollify_scalar(u, m);
        double t1 = lp_od_norm(frac_gradient(subtract(u, ue), 0.5), 1.0);
        double t2 = best_constant_shift(ue, 2.0).second;
        if (t1 + t2 < best) {
            best = t1 + t2;
            best_eps = eps;
        }
    }
    return {best, best_eps};
}

double chi_counterexample(double R) {
    if (!(R > 2.0)) throw std::invalid_argument("chi_counterexample: R must exceed 2");
    return 4.0 * ((R + 1.0) * std::log(R + 1.0) - (R - 1.0) * std::log(R - 1.0) -
                  2.0 * std::log(2.0));
}

}  // namespace odfrac
