#include "odfrac/operators.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace odfrac {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

// |x_i - x_j|^{-e} looked up by per-axis index offset.
class InversePowerTable {
  public:
    InversePowerTable(const GridSpec& g, double exponent) : g_(g) {
        const int N = g.points_per_axis;
        if (g.dim == 1) {
            t1_.resize(N, 0.0);
            for (int d = 1; d < N; ++d) t1_[d] = std::pow(d * g.spacing, -exponent);
        } else {
            t2_.resize(static_cast<std::size_t>(N) * N, 0.0);
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    if (a == 0 && b == 0) continue;
                    double r = g.spacing * std::sqrt(double(a) * a + double(b) * b);
                    t2_[static_cast<std::size_t>(a) * N + b] = std::pow(r, -exponent);
                }
        }
    }

    double operator()(std::int64_t i, std::int64_t j) const {
        if (g_.dim == 1) return t1_[std::abs(i - j)];
        auto ia = g_.unflatten(i), ib = g_.unflatten(j);
        return t2_[static_cast<std::size_t>(std::abs(ia[0] - ib[0])) * g_.points_per_axis +
                   std::abs(ia[1] - ib[1])];
    }

  private:
    GridSpec g_;
    std::vector<double> t1_, t2_;
};

}  // namespace

double cell_defect(int n, double alpha) {
    if (!(alpha > -double(n)))
        throw std::invalid_argument("cell_defect: alpha must exceed -n");
    static std::map<std::pair<int, double>, double> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({n, alpha});
        if (it != cache.end()) return it->second;
    }
    double value = 0.0;
    if (n == 1) {
        auto window = [&](std::int64_t W) {
            Kahan s;
            for (std::int64_t m = 1; m <= W; ++m) s.add(std::pow(double(m), alpha));
            double integral = 2.0 * std::pow(W + 0.5, alpha + 1.0) / (alpha + 1.0);
            return integral - 2.0 * s.sum;
        };
        double d1 = window(200000), d2 = window(400000);
        if (alpha > 0.0) {
            double r = std::pow(2.0, alpha - 1.0);
            value = (d2 - r * d1) / (1.0 - r);
        } else {
            value = d2;
        }
    } else {
        // integral of |z|^alpha over the square |z|_inf <= S:
        //   8 S^{alpha+2}/(alpha+2) * int_0^{pi/4} sec(t)^{alpha+2} dt
        auto square_integral = [&](double S) {
            const int nq = 2000;
            double hq = (kPi / 4.0) / nq, acc = 0.0;
            for (int i = 0; i < nq; ++i) {
                double t = (i + 0.5) * hq;
                acc += std::pow(1.0 / std::cos(t), alpha + 2.0) * hq;
            }
            return 8.0 * std::pow(S, alpha + 2.0) / (alpha + 2.0) * acc;
        };
        auto window = [&](int W) {
            Kahan s;
            for (int a = -W; a <= W; ++a)
                for (int b = -W; b <= W; ++b) {
                    if (a == 0 && b == 0) continue;
                    s.add(std::pow(double(a) * a + double(b) * b, 0.5 * alpha));
                }
            return square_integral(W + 0.5) - s.sum;
        };
        double d1 = window(128), d2 = window(256);
        double r = std::pow(2.0, alpha);  // tail shrinks like W^alpha (alpha < 0 here)
        value = (alpha < 0.0) ? (d2 - r * d1) / (1.0 - r) : d2;
    }
    std::lock_guard<std::mutex> lk(mu);
    cache[{n, alpha}] = value;
    return value;
}

OffDiagonalField frac_gradient(const ScalarField& u, double s) {
    if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("frac_gradient: s must be in [0,1]");
    for (double v : u.values)
        if (!std::isfinite(v)) throw std::invalid_argument("frac_gradient: non-finite input");
    const GridSpec& g = u.grid;
    OffDiagonalField out = zero_od(g);
    InversePowerTable inv(g, s);
    const std::int64_t K = g.node_count();
    std::int64_t k = 0;
    for (std::int64_t i = 0; i < K; ++i)
        for (std::int64_t j = i + 1; j < K; ++j, ++k)
            out.upper[k] = (u.values[i] - u.values[j]) * inv(i, j);
    out.provenance = GradientProvenance{s, u.values};
    return out;
}

ScalarField frac_divergence(const OffDiagonalField& G, double s) {
    if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("frac_divergence: s must be in [0,1]");
    const GridSpec& g = G.grid;
    const std::int64_t K = g.node_count();
    const int N = g.points_per_axis;
    InversePowerTable inv(g, double(g.dim) + s);
    ScalarField out = zero_scalar(g);

    if (g.dim == 1) {
        for (std::int64_t i = 0; i < K; ++i) {
            Kahan acc;
            for (std::int64_t m = 1; m < N; ++m) {
                const std::int64_t lo = i - m, hi = i + m;
                double pair = 0.0;
                if (lo >= 0) pair += 2.0 * G.value(i, lo) * g.weight(lo) * inv(i, lo);
                if (hi < K) pair += 2.0 * G.value(i, hi) * g.weight(hi) * inv(i, hi);
                if (lo < 0 && hi >= K) break;
                acc.add(pair);
            }
            out.values[i] = acc.sum;
        }
        if (G.provenance && G.provenance->order + s < 2.0) {
            // diagonal-cell correction: even part of the integrand behaves
            // like -u''(x) |z|^{1 - s - s_g} near the diagonal
            const double sg = G.provenance->order;
            const double D = cell_defect(1, 1.0 - s - sg);
            const double scale = std::pow(g.spacing, -s) * D;
            for (std::int64_t i = 1; i + 1 < K; ++i)
                out.values[i] += (G.value(i, i + 1) + G.value(i, i - 1)) * scale;
        }
    } else {
        for (std::int64_t i = 0; i < K; ++i) {
            auto ci = g.unflatten(i);
            Kahan acc;
            // offsets over the half-space {da > 0} u {da == 0, db > 0};
            // each with its antipode so the odd singularity cancels
            for (int da = 0; da <= N - 1; ++da) {
                for (int db = (da == 0) ? 1 : -(N - 1); db <= N - 1; ++db) {
                    double pair = 0.0;
                    int a = ci[0] + da, b = ci[1] + db;
                    if (a >= 0 && a < N && b >= 0 && b < N) {
                        std::int64_t jp = g.flatten({a, b});
                        pair += 2.0 * G.value(i, jp) * g.weight(jp) * inv(i, jp);
                    }
                    int a2 = ci[0] - da, b2 = ci[1] - db;
                    if (a2 >= 0 && a2 < N && b2 >= 0 && b2 < N) {
                        std::int64_t jm = g.flatten({a2, b2});
                        pair += 2.0 * G.value(i, jm) * g.weight(jm) * inv(i, jm);
                    }
                    if (pair != 0.0) acc.add(pair);
                }
            }
            out.values[i] = acc.sum;
        }
    }
    return out;
}

namespace {

// Kernel samples on the per-axis offset lattice, c_m = phi(m h) h^n for the
// diagonal-shift convolutions (n = 1 offsets in 1D, (ma, mb) in 2D).
std::vector<double> kernel_offsets_1d(const GridSpec& g, const Mollifier& m) {
    const int N = g.points_per_axis;
    std::vector<double> c(2 * N - 1);
    for (int off = -(N - 1); off <= N - 1; ++off)
        c[off + N - 1] = m.kernel(std::abs(off) * g.spacing, 1) * g.spacing;
    return c;
}

void warn_resolution(const GridSpec& g, const Mollifier& m, const WarnSink& warn) {
    if (warn && m.epsilon < 2.0 * g.spacing)
        warn("mollifier under-resolved: epsilon < 2h (epsilon=" +
             std::to_string(m.epsilon) + ", h=" + std::to_string(g.spacing) + ")");
}

}  // namespace

ScalarField mollify_scalar(const ScalarField& u, const Mollifier& m, const WarnSink& warn) {
    const GridSpec& g = u.grid;
    warn_resolution(g, m, warn);
    ScalarField out = zero_scalar(g);
    const int N = g.points_per_axis;

    if (g.dim == 1) {
        auto c = kernel_offsets_1d(g, m);
        for (int i = 0; i < N; ++i) {
            Kahan num, den;
            for (int j = 0; j < N; ++j) {
                double cc = c[(i - j) + N - 1];
                if (cc == 0.0) continue;
                num.add(cc * u.values[j]);
                den.add(cc);
            }
            out.values[i] = num.sum / den.sum;
        }
    } else {
        std::vector<double> c1(2 * N - 1);
        for (int off = -(N - 1); off <= N - 1; ++off)
            c1[off + N - 1] = std::abs(off) * g.spacing;  // axis distances
        for (int ia = 0; ia < N; ++ia)
            for (int ib = 0; ib < N; ++ib) {
                Kahan num, den;
                for (int ja = 0; ja < N; ++ja)
                    for (int jb = 0; jb < N; ++jb) {
                        double r = std::hypot(c1[(ia - ja) + N - 1], c1[(ib - jb) + N - 1]);
                        double cc = m.kernel(r, 2) * g.spacing * g.spacing;
                        if (cc == 0.0) continue;
                        num.add(cc * u.values[static_cast<std::int64_t>(ja) * N + jb]);
                        den.add(cc);
                    }
                out.values[static_cast<std::int64_t>(ia) * N + ib] = num.sum / den.sum;
            }
    }
    return out;
}

namespace {

// Clamp-extended, globally normalized convolution of a node-value vector.
// Exact on constants; for decaying bases it agrees with the zero-extended
// convolution to within the boundary tail values.
std::vector<double> clamp_convolve_1d(const GridSpec& g, const std::vector<double>& base,
                                      const Mollifier& m) {
    const int N = g.points_per_axis;
    auto c = kernel_offsets_1d(g, m);
    Kahan mass;
    for (double cc : c) mass.add(cc);
    std::vector<double> out(N, 0.0);
    for (int i = 0; i < N; ++i) {
        Kahan acc;
        for (int off = -(N - 1); off <= N - 1; ++off) {
            double cc = c[off + N - 1];
            if (cc == 0.0) continue;
            int j = i - off;
            j = j < 0 ? 0 : (j >= N ? N - 1 : j);
            acc.add(cc * base[j]);
        }
        out[i] = acc.sum / mass.sum;
    }
    return out;
}

std::vector<double> clamp_convolve_2d(const GridSpec& g, const std::vector<double>& base,
                                      const Mollifier& m) {
    const int N = g.points_per_axis;
    Kahan mass;
    std::vector<double> kern(static_cast<std::size_t>(2 * N - 1) * (2 * N - 1));
    for (int a = -(N - 1); a <= N - 1; ++a)
        for (int b = -(N - 1); b <= N - 1; ++b) {
            double r = g.spacing * std::sqrt(double(a) * a + double(b) * b);
            double cc = m.kernel(r, 2) * g.spacing * g.spacing;
            kern[static_cast<std::size_t>(a + N - 1) * (2 * N - 1) + (b + N - 1)] = cc;
            mass.add(cc);
        }
    std::vector<double> out(static_cast<std::size_t>(N) * N, 0.0);
    for (int ia = 0; ia < N; ++ia)
        for (int ib = 0; ib < N; ++ib) {
            Kahan acc;
            for (int a = -(N - 1); a <= N - 1; ++a) {
                int ja = ia - a;
                ja = ja < 0 ? 0 : (ja >= N ? N - 1 : ja);
                for (int b = -(N - 1); b <= N - 1; ++b) {
                    double cc = kern[static_cast<std::size_t>(a + N - 1) * (2 * N - 1) +
                                     (b + N - 1)];
                    if (cc == 0.0) continue;
                    int jb = ib - b;
                    jb = jb < 0 ? 0 : (jb >= N ? N - 1 : jb);
                    acc.add(cc * base[static_cast<std::size_t>(ja) * N + jb]);
                }
            }
            out[static_cast<std::size_t>(ia) * N + ib] = acc.sum / mass.sum;
        }
    return out;
}

}  // namespace

OffDiagonalField mollify_od(const OffDiagonalField& F, const Mollifier& m,
                            const WarnSink& warn) {
    const GridSpec& g = F.grid;
    warn_resolution(g, m, warn);

    if (F.provenance) {
        // phi * d_s u = d_s (phi * u): convolve the base and retake the
        // difference quotients. Boundary-faithful for decaying bases and
        // exact for constants.
        const double s = F.provenance->order;
        std::vector<double> v = (g.dim == 1)
                                    ? clamp_convolve_1d(g, F.provenance->base, m)
                                    : clamp_convolve_2d(g, F.provenance->base, m);
        ScalarField vf{g, std::move(v)};
        return frac_gradient(vf, s);
    }

    OffDiagonalField out = zero_od(g);
    const std::int64_t K = g.node_count();

    if (g.dim == 1) {
        const int N = g.points_per_axis;
        auto c = kernel_offsets_1d(g, m);
        std::int64_t k = 0;
        for (std::int64_t i = 0; i < K; ++i) {
            for (std::int64_t j = i + 1; j < K; ++j, ++k) {
                // valid diagonal shifts keep both arguments on the grid
                const std::int64_t lo = j - (N - 1), hi = i;
                Kahan num, den;
                for (std::int64_t off = lo; off <= hi; ++off) {
                    double cc = c[off + N - 1];
                    if (cc == 0.0) continue;
                    num.add(cc * F.value(i - off, j - off));
                    den.add(cc);
                }
                out.upper[k] = den.sum > 0.0 ? num.sum / den.sum : 0.0;
            }
        }
    } else {
        const int N = g.points_per_axis;
        std::int64_t k = 0;
        for (std::int64_t i = 0; i < K; ++i) {
            auto ci = g.unflatten(i);
            for (std::int64_t j = i + 1; j < K; ++j, ++k) {
                auto cj = g.unflatten(j);
                int alo = std::max(ci[0], cj[0]) - (N - 1), ahi = std::min(ci[0], cj[0]);
                int blo = std::max(ci[1], cj[1]) - (N - 1), bhi = std::min(ci[1], cj[1]);
                Kahan num, den;
                for (int a = alo; a <= ahi; ++a)
                    for (int b = blo; b <= bhi; ++b) {
                        double r = g.spacing * std::sqrt(double(a) * a + double(b) * b);
                        double cc = m.kernel(r, 2) * g.spacing * g.spacing;
                        if (cc == 0.0) continue;
                        num.add(cc * F.value(g.flatten({ci[0] - a, ci[1] - b}),
                                             g.flatten({cj[0] - a, cj[1] - b})));
                        den.add(cc);
                    }
                out.upper[k] = den.sum > 0.0 ? num.sum / den.sum : 0.0;
            }
        }
    }
    return out;
}

ScalarField frac_laplacian_integral(const ScalarField& u, double s) {
    if (!(s > 0.0 && s < 1.0))
        throw std::invalid_argument("frac_laplacian_integral: s must be in (0,1)");
    const GridSpec& g = u.grid;
    const std::int64_t K = g.node_count();
    const int N = g.points_per_axis;
    InversePowerTable inv(g, double(g.dim) + 2.0 * s);
    ScalarField out = zero_scalar(g);

    if (g.dim == 1) {
        const double D = cell_defect(1, 1.0 - 2.0 * s);
        const double corr_scale = std::pow(g.spacing, -2.0 * s) * D;
        for (std::int64_t i = 0; i < K; ++i) {
            Kahan acc;
            for (std::int64_t m = 1; m < N; ++m) {
                const std::int64_t lo = i - m, hi = i + m;
                double pair = 0.0;
                if (lo >= 0)
                    pair += 2.0 * (u.values[i] - u.values[lo]) * g.weight(lo) * inv(i, lo);
                if (hi < K)
                    pair += 2.0 * (u.values[i] - u.values[hi]) * g.weight(hi) * inv(i, hi);
                if (lo < 0 && hi >= K) break;
                acc.add(pair);
            }
            // diagonal-cell correction from the local second difference
            if (i > 0 && i + 1 < K)
                acc.add((2.0 * u.values[i] - u.values[i + 1] - u.values[i - 1]) * corr_scale);
            // far-field closure: the kernel tail over |y| > L with u extended
            // by its boundary values (exact for constants, and the boundary
            // values are negligible for the decaying families)
            const double x = g.axis_nodes[i];
            const double dl = std::max(g.half_width - x, g.spacing);
            const double dr = std::max(g.half_width + x, g.spacing);
            acc.add((u.values[i] - u.values[K - 1]) / s * std::pow(dl, -2.0 * s));
            acc.add((u.values[i] - u.values[0]) / s * std::pow(dr, -2.0 * s));
            out.values[i] = acc.sum;
        }
    } else {
        for (std::int64_t i = 0; i < K; ++i) {
            auto ci = g.unflatten(i);
            Kahan acc;
            for (int da = 0; da <= N - 1; ++da) {
                for (int db = (da == 0) ? 1 : -(N - 1); db <= N - 1; ++db) {
                    double pair = 0.0;
                    int a = ci[0] + da, b = ci[1] + db;
                    if (a >= 0 && a < N && b >= 0 && b < N) {
                        std::int64_t jp = g.flatten({a, b});
                        pair += 2.0 * (u.values[i] - u.values[jp]) * g.weight(jp) * inv(i, jp);
                    }
                    int a2 = ci[0] - da, b2 = ci[1] - db;
                    if (a2 >= 0 && a2 < N && b2 >= 0 && b2 < N) {
                        std::int64_t jm = g.flatten({a2, b2});
                        pair += 2.0 * (u.values[i] - u.values[jm]) * g.weight(jm) * inv(i, jm);
                    }
                    if (pair != 0.0) acc.add(pair);
                }
            }
            out.values[i] = acc.sum;
        }
    }
    return out;
}

double boundary_level(const ScalarField& u) {
    const GridSpec& g = u.grid;
    const std::int64_t K = g.node_count();
    const int N = g.points_per_axis;
    double maxu = 0.0, maxb = 0.0;
    for (std::int64_t i = 0; i < K; ++i) {
        auto idx = g.unflatten(i);
        double a = std::abs(u.values[i]);
        maxu = std::max(maxu, a);
        bool boundary = idx[0] == 0 || idx[0] == N - 1;
        if (g.dim == 2) boundary = boundary || idx[1] == 0 || idx[1] == N - 1;
        if (boundary) maxb = std::max(maxb, a);
    }
    return maxu > 0.0 ? maxb / maxu : 0.0;
}

SpectralPlan::SpectralPlan(const GridSpec& grid_, double s_, int pad_)
    : grid(grid_), s(s_), pad(pad_) {
    if (!(s > 0.0 && s <= 1.0))
        throw std::invalid_argument("SpectralPlan: s must be in (0,1]");
    if (pad < 1) throw std::invalid_argument("SpectralPlan: pad must be >= 1");
}

ScalarField SpectralPlan::apply(const ScalarField& u, const WarnSink& warn) const {
    if (!u.grid.same_as(grid)) throw std::invalid_argument("SpectralPlan: grid mismatch");
    if (warn) {
        double b = boundary_level(u);
        if (b > 1e-10)
            warn("spectral operator: boundary level " + std::to_string(b) +
                 " exceeds 1e-10; periodization error is uncontrolled");
    }
    const int N = grid.points_per_axis;
    const int M = pad * (N - 1);
    const double period = M * grid.spacing;
    const int n_in = std::min(N, M);
    ScalarField out = zero_scalar(grid);

    // the operator annihilates constants, so shift by the boundary level
    // before zero-padding; the padded extension of a constant then stays a
    // constant instead of a step
    double shift = 0.0;
    {
        double acc = 0.0;
        int cnt = 0;
        const std::int64_t K = grid.node_count();
        for (std::int64_t i = 0; i < K; ++i) {
            auto idx = grid.unflatten(i);
            bool boundary = idx[0] == 0 || idx[0] == N - 1;
            if (grid.dim == 2) boundary = boundary || idx[1] == 0 || idx[1] == N - 1;
            if (boundary) {
                acc += u.values[i];
                ++cnt;
            }
        }
        shift = acc / cnt;
    }

    if (grid.dim == 1) {
        std::vector<std::complex<double>> buf(M, 0.0);
        for (int i = 0; i < n_in; ++i) buf[i] = u.values[i] - shift;
        fftw_plan fwd = fftw_plan_dft_1d(M, reinterpret_cast<fftw_complex*>(buf.data()),
                                         reinterpret_cast<fftw_complex*>(buf.data()),
                                         FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_execute(fwd);
        fftw_destroy_plan(fwd);
        for (int r = 0; r < M; ++r) {
            int k = (r <= M / 2) ? r : r - M;
            double mult = (k == 0) ? 0.0 : std::pow(2.0 * kPi * std::abs(k) / period, 2.0 * s);
            buf[r] *= mult;
        }
        fftw_plan bwd = fftw_plan_dft_1d(M, reinterpret_cast<fftw_complex*>(buf.data()),
                                         reinterpret_cast<fftw_complex*>(buf.data()),
                                         FFTW_BACKWARD, FFTW_ESTIMATE);
        fftw_execute(bwd);
        fftw_destroy_plan(bwd);
        for (int i = 0; i < n_in; ++i) out.values[i] = buf[i].real() / M;
        if (n_in < N) out.values[N - 1] = buf[0].real() / M;  // wrapped endpoint
    } else {
        std::vector<std::complex<double>> buf(static_cast<std::size_t>(M) * M, 0.0);
        for (int a = 0; a < n_in; ++a)
            for (int b = 0; b < n_in; ++b)
                buf[static_cast<std::size_t>(a) * M + b] =
                    u.values[static_cast<std::int64_t>(a) * N + b] - shift;
        fftw_plan fwd = fftw_plan_dft_2d(M, M, reinterpret_cast<fftw_complex*>(buf.data()),
                                         reinterpret_cast<fftw_complex*>(buf.data()),
                                         FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_execute(fwd);
        fftw_destroy_plan(fwd);
        for (int ra = 0; ra < M; ++ra) {
            int ka = (ra <= M / 2) ? ra : ra - M;
            for (int rb = 0; rb < M; ++rb) {
                int kb = (rb <= M / 2) ? rb : rb - M;
                double kk = std::sqrt(double(ka) * ka + double(kb) * kb);
                double mult =
                    (kk == 0.0) ? 0.0 : std::pow(2.0 * kPi * kk / period, 2.0 * s);
                buf[static_cast<std::size_t>(ra) * M + rb] *= mult;
            }
        }
        fftw_plan bwd = fftw_plan_dft_2d(M, M, reinterpret_cast<fftw_complex*>(buf.data()),
                                         reinterpret_cast<fftw_complex*>(buf.data()),
                                         FFTW_BACKWARD, FFTW_ESTIMATE);
        fftw_execute(bwd);
        fftw_destroy_plan(bwd);
        const double inv = 1.0 / (static_cast<double>(M) * M);
        for (int a = 0; a < n_in; ++a)
            for (int b = 0; b < n_in; ++b)
                out.values[static_cast<std::int64_t>(a) * N + b] =
                    buf[static_cast<std::size_t>(a) * M + b].real() * inv;
        if (n_in < N) {
            for (int a = 0; a < N; ++a) {
                int wa = (a == N - 1) ? 0 : a;
                out.values[static_cast<std::int64_t>(a) * N + (N - 1)] =
                    buf[static_cast<std::size_t>(wa) * M + 0].real() * inv;
                out.values[static_cast<std::int64_t>(N - 1) * N + a] =
                    buf[0 * M + static_cast<std::size_t>(wa)].real() * inv;
            }
        }
    }
    return out;
}

ScalarField frac_laplacian_spectral(const ScalarField& u, double s, int pad,
                                    const WarnSink& warn) {
    return SpectralPlan(u.grid, s, pad).apply(u, warn);
}

}  // namespace odfrac
