/// @file test_operators.cpp
/// @brief Fractional gradient/divergence, mollification, both Laplacian
///        realizations, and the identities tying them together.

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <limits>

#include "odfrac/norms.hpp"
#include "odfrac/operators.hpp"
#include "odfrac/testlib.hpp"
#include "oracles.hpp"

using namespace odfrac;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::int64_t node_at(const GridSpec& g, double x) {
    return static_cast<std::int64_t>(std::lround((x + g.half_width) / g.spacing));
}
}  // namespace

TEST_CASE("frac_gradient: constants, linear slope, s = 0 difference") {
    GridSpec g = make_grid(1, 4.0, 17);
    ScalarField c = sample_scalar(ScalarFnSpec::constant(5.0), g);
    OffDiagonalField dc = frac_gradient(c, 0.5);
    for (double v : dc.upper) CHECK(v == 0.0);

    ScalarField lin = sample_scalar(ScalarFnSpec::linear(), g);
    OffDiagonalField dl = frac_gradient(lin, 0.5);
    CHECK(dl.value(node_at(g, 1.0), node_at(g, 0.0)) == doctest::Approx(1.0));

    ScalarField u = sample_scalar(ScalarFnSpec::gaussian(0, 1, 1), g);
    OffDiagonalField d0 = frac_gradient(u, 0.0);
    CHECK(d0.value(node_at(g, 1.0), node_at(g, 0.0)) ==
          doctest::Approx(std::exp(-1.0) - 1.0).epsilon(1e-15));
    // s = 0 values are exactly the differences
    for (std::int64_t i = 0; i < g.node_count(); ++i)
        for (std::int64_t j = 0; j < g.node_count(); ++j)
            if (i != j)
                CHECK(d0.value(i, j) == u.values[i] - u.values[j]);

    CHECK_THROWS_AS(frac_gradient(u, 1.5), std::invalid_argument);
}

TEST_CASE("frac_gradient: antisymmetry exact for arbitrary input") {
    GridSpec g = make_grid(2, 2.0, 7);
    ScalarField u = sample_scalar(ScalarFnSpec::gaussian(0.3, 0.8, 1.7), g);
    OffDiagonalField d = frac_gradient(u, 0.6);
    for (std::int64_t i = 0; i < g.node_count(); ++i) {
        CHECK(d.value(i, i) == 0.0);
        for (std::int64_t j = 0; j < g.node_count(); ++j)
            CHECK(d.value(i, j) == -d.value(j, i));
    }
}

TEST_CASE("frac_divergence: zero, linearity, fine-grid oracle at a node") {
    GridSpec g = make_grid(1, 10.0, 321);
    OdFnSpec spec =
        OdFnSpec::disjoint_bumps(ScalarFnSpec::bump(-2, 1), ScalarFnSpec::bump(2, 1));
    OffDiagonalField G = sample_od(spec, g);

    ScalarField dz = frac_divergence(zero_od(g), 0.5);
    for (double v : dz.values) CHECK(v == 0.0);

    ScalarField d1 = frac_divergence(G, 0.5);
    ScalarField d2 = frac_divergence(od_scale(G, -2.5), 0.5);
    for (std::int64_t i = 0; i < g.node_count(); ++i)
        CHECK(d2.values[i] == doctest::Approx(-2.5 * d1.values[i]).epsilon(1e-13));

    double oracle = oracles::divergence_oracle(spec, -2.0, 0.5, 10.0, 2561);
    CHECK(d1.values[node_at(g, -2.0)] == doctest::Approx(oracle).epsilon(1e-4));

    CHECK_THROWS_AS(frac_divergence(G, 1.5), std::invalid_argument);
}

TEST_CASE("adjointness: pairing against the divergence closes at rounding") {
    GridSpec g = make_grid(1, 10.0, 129);
    std::vector<ScalarFnSpec> us = {ScalarFnSpec::gaussian(0, 1, 1),
                                    ScalarFnSpec::poly_gaussian(2, 1.2),
                                    ScalarFnSpec::constant(2.0)};
    std::vector<OdFnSpec> gs = {
        OdFnSpec::disjoint_bumps(ScalarFnSpec::bump(-2, 1), ScalarFnSpec::bump(2, 1)),
        OdFnSpec::cutoff_gradient(ScalarFnSpec::gaussian(0, 1, 1), 0.5, 0.5)};
    for (const auto& uspec : us)
        for (const auto& gspec : gs)
            for (double s : {0.25, 0.5, 0.75}) {
                ScalarField u = sample_scalar(uspec, g);
                OffDiagonalField G = sample_od(gspec, g);
                double lhs = pair_od(frac_gradient(u, s), G);
                double rhs = pair_scalar(u, frac_divergence(G, s));
                double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
                CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);
            }
}

TEST_CASE("mollify_scalar: constants exact, gaussian widening closed form") {
    GridSpec g = make_grid(1, 10.0, 257);
    Mollifier m{Mollifier::Shape::Gaussian, 0.5};

    ScalarField c = sample_scalar(ScalarFnSpec::constant(4.2), g);
    ScalarField mc = mollify_scalar(c, m);
    for (double v : mc.values) CHECK(v == doctest::Approx(4.2).epsilon(1e-12));

    // phi_eps * exp(-x^2/s^2) = s/sqrt(s^2+eps^2) exp(-x^2/(s^2+eps^2))
    ScalarField u = sample_scalar(ScalarFnSpec::gaussian(0, 1, 1), g);
    ScalarField mu = mollify_scalar(u, m);
    double sig2 = 1.0 + 0.25;
    for (double x : {0.0, 0.5, 1.5, 3.0}) {
        std::int64_t i = node_at(g, x);
        double xn = g.axis_nodes[i];
        double expect = 1.0 / std::sqrt(sig2) * std::exp(-xn * xn / sig2);
        CHECK(mu.values[i] == doctest::Approx(expect).epsilon(1e-8));
    }
    CHECK(mu.values[node_at(g, 0.0)] < u.values[node_at(g, 0.0)]);
}

TEST_CASE("mollify_scalar: eps -> 0 converges at second order") {
    GridSpec g = make_grid(1, 10.0, 1025);
    ScalarField u = sample_scalar(ScalarFnSpec::gaussian(0, 1, 1), g);
    auto err = [&](double eps) {
        Mollifier m{Mollifier::Shape::Bump, eps};
        ScalarField mu = mollify_scalar(u, m);
        double worst = 0.0;
        for (std::int64_t i = 0; i < g.node_count(); ++i)
            worst = std::max(worst, std::abs(mu.values[i] - u.values[i]));
        return worst;
    };
    double e1 = err(0.4), e2 = err(0.2);
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("mollify_scalar: warns when the kernel is under-resolved") {
    GridSpec g = make_grid(1, 1.0, 9);  // h = 0.25
    ScalarField u = sample_scalar(ScalarFnSpec::gaussian(0, 1, 1), g);
    int warnings = 0;
    mollify_scalar(u, Mollifier{Mollifier::Shape::Gaussian, 0.1},
                   [&](const std::string&) { ++warnings; });
    CHECK(warnings == 1);
    mollify_scalar(u, Mollifier{Mollifier::Shape::Gaussian, 1.0},
                   [&](const std::string&) { ++warnings; });
    CHECK(warnings == 1);
}

TEST_CASE("mollify_od: zero field, exact diagonal zero and antisymmetry") {
    GridSpec g = make_grid(1, 5.0, 65);
    Mollifier m{Mollifier::Shape::Gaussian, 0.4};
    OffDiagonalField z = mollify_od(zero_od(g), m);
    for (double v : z.upper) CHECK(v == 0.0);

    OffDiagonalField F = sample_od(
        OdFnSpec::disjoint_bumps(ScalarFnSpec::bump(-2, 1), ScalarFnSpec::bump(2, 1)), g);
    OffDiagonalField mf = mollify_od(F, m);
    for (std::int64_t i = 0; i < g.node_count(); ++i) {
        CHECK(mf.value(i, i) == 0.0);
        for (std::int64_t j = i + 1; j < g.node_count(); ++j)
            CHECK(mf.value(i, j) == -mf.value(j, i));
    }
}

TEST_CASE("mollify_od: contraction in every L^p_od over the test family") {
    GridSpec g = make_grid(1, 10.0, 257);
    std::vector<OffDiagonalField> fields;
    fields.push_back(sample_od(
        OdFnSpec::disjoint_bumps(ScalarFnSpec::bump(-2, 1), ScalarFnSpec::bump(2, 1)), g));
    fields.push_back(sample_od(
        OdFnSpec::separated_pair(ScalarFnSpec::gaussian(-2, 0.5, 1),
                                 ScalarFnSpec::gaussian(2, 0.5, 1)),
        g));
    for (const auto& uspec :
         {ScalarFnSpec::gaussian(0, 1, 1), ScalarFnSpec::bump(0, 3)})
        fields.push_back(frac_gradient(sample_scalar(uspec, g), 0.5));

    for (auto shape : {Mollifier::Shape::Gaussian, Mollifier::Shape::Bump}) {
        Mollifier m{shape, 0.5};
        for (const auto& F : fields)
            for (double p : {1.0, 2.0}) {
                double before = lp_od_norm(F, p);
                double after = lp_od_norm(mollify_od(F, m), p);
                CHECK(after <= (1.0 + 1e-9) * before);
            }
    }
}

TEST_CASE("commutation: mollification and the gradient commute") {
    GridSpec g = make_grid(1, 10.0, 257);
    ScalarField u = sample_scalar(ScalarFnSpec::gaussian(0, 1, 1), g);
    for (auto shape : {Mollifier::Shape::Gaussian, Mollifier::Shape::Bump}) {
        Mollifier m{shape, 0.5};
        OffDiagonalField a = mollify_od(frac_gradient(u, 0.5), m);
        OffDiagonalField b = frac_gradient(mollify_scalar(u, m), 0.5);
        double resid = lp_od_norm(od_subtract(a, b), 1.0);
        double scale = lp_od_norm(a, 1.0);
        CHECK(resid <= 1e-3 * scale);   // the acceptance threshold
        CHECK(resid <= 1e-10 * scale);  // in fact exact at rounding level
    }
}

TEST_CASE("frac_laplacian_integral: constants vanish, linearity exact") {
    GridSpec g = make_grid(1, 8.0, 129);
    ScalarField c = sample_scalar(ScalarFnSpec::constant(3.0), g);
    ScalarField lc = frac_laplacian_integral(c, 0.5);
    for (double v : lc.values) CHECK(v == 0.0);

    ScalarField u = sample_scalar(ScalarFnSpec::gaussian(0, 1, 1), g);
    ScalarField v = sample_scalar(ScalarFnSpec::bump(0.5, 2), g);
    ScalarField sum = subtract(u, scale(v, -2.0));  // u + 2v
    ScalarField lsum = frac_laplacian_integral(sum, 0.5);
    ScalarField lu = frac_laplacian_integral(u, 0.5);
    ScalarField lv = frac_laplacian_integral(v, 0.5);
    for (std::int64_t i = 0; i < g.node_count(); ++i)
        CHECK(lsum.values[i] ==
              doctest::Approx(lu.values[i] + 2.0 * lv.values[i]).epsilon(1e-11));

    CHECK_THROWS_AS(frac_laplacian_integral(u, 1.0), std::invalid_argument);
}

TEST_CASE("frac_laplacian_integral: translation equivariance in the interior") {
    // the far-field closure is anchored to the truncation box, so matched
    // interior values agree to the closure-model level, not to rounding
    GridSpec g = make_grid(1, 12.0, 385);
    ScalarField u0 = sample_scalar(ScalarFnSpec::gaussian(0, 1, 1), g);
    ScalarField u1 = sample_scalar(ScalarFnSpec::gaussian(1.0, 1, 1), g);
    ScalarField l0 = frac_laplacian_integral(u0, 0.5);
    ScalarField l1 = frac_laplacian_integral(u1, 0.5);
    std::int64_t shift = std::lround(1.0 / g.spacing);
    double worst = 0.0, scale0 = 0.0;
    for (std::int64_t i = node_at(g, -4.0); i <= node_at(g, 4.0); ++i) {
        worst = std::max(worst, std::abs(l1.values[i + shift] - l0.values[i]));
        scale0 = std::max(scale0, std::abs(l0.values[i]));
    }
    CHECK(worst <= 1e-2 * scale0);
}

TEST_CASE("laplacian identity: fused integral matches kappa * spectral") {
    GridSpec g = make_grid(1, 12.0, 513);
    ScalarField u = sample_scalar(ScalarFnSpec::gaussian(0, 1, 1), g);
    ScalarField T = frac_laplacian_integral(u, 0.5);
    ScalarField S = frac_laplacian_spectral(u, 0.5, 16);

    // at x = 0: div_{1/2} d_{1/2} u = 4 sqrt(pi), spectral = 2 / sqrt(pi)
    std::int64_t i0 = node_at(g, 0.0);
    CHECK(T.values[i0] == doctest::Approx(4.0 * std::sqrt(kPi)).epsilon(2e-4));
    CHECK(S.values[i0] == doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(1e-4));
    CHECK(T.values[i0] / S.values[i0] == doctest::Approx(2.0 * kPi).epsilon(1e-3));

    // unfused composition lacks the far-field closure, so it agrees only to
    // the truncation tolerance (the omitted kernel tail is ~5% at s = 1/2)
    ScalarField comp = frac_divergence(frac_gradient(u, 0.5), 0.5);
    CHECK(comp.values[i0] == doctest::Approx(T.values[i0]).epsilon(0.06));
}

TEST_CASE("frac_laplacian_spectral: annihilates constants, s = 1 is -Laplace") {
    GridSpec g = make_grid(1, 10.0, 513);
    ScalarField c = sample_scalar(ScalarFnSpec::constant(2.0), g);
    ScalarField sc = frac_laplacian_spectral(c, 0.5, 4);
    for (double v : sc.values) CHECK(std::abs(v) <= 1e-11);

    ScalarField u = sample_scalar(ScalarFnSpec::gaussian(0, 1, 1), g);
    ScalarField lap = frac_laplacian_spectral(u, 1.0, 8);
    double h = g.spacing;
    double worst = 0.0, scale0 = 0.0;
    for (std::int64_t i = node_at(g, -4.0); i <= node_at(g, 4.0); ++i) {
        double second =
            -(u.values[i + 1] - 2.0 * u.values[i] + u.values[i - 1]) / (h * h);
        worst = std::max(worst, std::abs(lap.values[i] - second));
        scale0 = std::max(scale0, std::abs(second));
    }
    CHECK(worst <= 1e-3 * scale0);  // second difference itself is O(h^2)

    double oracle = oracles::spectral_gaussian_at_zero_oracle(0.5);
    ScalarField s05 = frac_laplacian_spectral(u, 0.5, 16);
    CHECK(s05.values[node_at(g, 0.0)] == doctest::Approx(oracle).epsilon(1e-4));
    CHECK(oracle == doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(1e-8));
}

TEST_CASE("frac_laplacian_spectral: unpadded plan wraps the shared endpoint") {
    // pad = 1 identifies x = -L with x = +L on the periodic extension
    GridSpec g = make_grid(1, 10.0, 257);
    ScalarField u = sample_scalar(ScalarFnSpec::gaussian(0, 1, 1), g);
    ScalarField a = frac_laplacian_spectral(u, 0.5, 1);
    CHECK(a.values.front() == a.values.back());
    // interior values agree with the padded plan up to the periodization
    // error of the slowly decaying output tail (a few percent at the core)
    ScalarField b = frac_laplacian_spectral(u, 0.5, 16);
    std::int64_t i0 = node_at(g, 0.0);
    CHECK(a.values[i0] == doctest::Approx(b.values[i0]).epsilon(0.05));

    GridSpec g2 = make_grid(2, 4.0, 17);
    ScalarField u2 = sample_scalar(ScalarFnSpec::gaussian(0, 1, 1), g2);
    ScalarField a2 = frac_laplacian_spectral(u2, 0.5, 1);
    const int N = g2.points_per_axis;
    // wrapped row and column coincide with their partners
    for (int k = 0; k < N; ++k) {
        CHECK(a2.values[static_cast<std::int64_t>(N - 1) * N + k] ==
              a2.values[0 * N + (k == N - 1 ? 0 : k)]);
        CHECK(a2.values[static_cast<std::int64_t>(k) * N + (N - 1)] ==
              a2.values[static_cast<std::int64_t>(k == N - 1 ? 0 : k) * N + 0]);
    }
}

TEST_CASE("frac_laplacian_spectral: boundary warning fires when not decayed") {
    GridSpec g = make_grid(1, 2.0, 65);  // gaussian not decayed at |x| = 2
    ScalarField u = sample_scalar(ScalarFnSpec::gaussian(0, 1, 1), g);
    int warnings = 0;
    frac_laplacian_spectral(u, 0.5, 8, [&](const std::string&) { ++warnings; });
    CHECK(warnings == 1);
    CHECK(boundary_level(u) > 1e-10);
}

TEST_CASE("s = 0 pairing identity: |x-y|^{1/2} d_{1/2}u pairs like d_0 u") {
    GridSpec g = make_grid(1, 8.0, 129);
    ScalarField u = sample_scalar(ScalarFnSpec::gaussian(0, 1, 1), g);
    OffDiagonalField dhalf = frac_gradient(u, 0.5);
    OffDiagonalField G = sample_od(
        OdFnSpec::disjoint_bumps(ScalarFnSpec::bump(-2, 1), ScalarFnSpec::bump(2, 1)), g);

    // scale d_{1/2}u by |x-y|^{1/2} through the raw-value route
    const std::int64_t K = g.node_count();
    std::vector<double> raw(K * K, 0.0);
    for (std::int64_t i = 0; i < K; ++i)
        for (std::int64_t j = 0; j < K; ++j)
            if (i != j)
                raw[i * K + j] =
                    dhalf.value(i, j) * std::sqrt(g.distance(i, j));
    OffDiagonalField scaled = antisymmetrize(g, raw);
    double lhs = pair_od(scaled, G);
    double rhs = pair_od(frac_gradient(u, 0.0), G);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("cell_defect: closed-form anchors") {
    CHECK(cell_defect(1, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    // -2 zeta(1/2) and -2 zeta(-1/2)
    CHECK(cell_defect(1, -0.5) == doctest::Approx(2.9207090176191736).epsilon(1e-6));
    CHECK(cell_defect(1, 0.5) == doctest::Approx(0.41577245499958).epsilon(1e-5));
    CHECK_THROWS_AS(cell_defect(1, -1.0), std::invalid_argument);
    // n = 2 value is finite and cached deterministically
    double d1 = cell_defect(2, -1.0), d2 = cell_defect(2, -1.0);
    CHECK(d1 == d2);
    CHECK(d1 == doctest::Approx(3.9003).epsilon(1e-3));
}

TEST_CASE("spectral plan: 2d constants annihilated, radial multiplier") {
    GridSpec g = make_grid(2, 4.0, 33);
    ScalarField c = constant_scalar(g, 1.5);
    ScalarField sc = frac_laplacian_spectral(c, 0.5, 4);
    for (double v : sc.values) CHECK(std::abs(v) <= 1e-11);

    // radially symmetric input keeps the mirror symmetry to FFT roundoff
    ScalarField u = sample_scalar(ScalarFnSpec::gaussian(0, 1, 1), g);
    ScalarField lap = frac_laplacian_spectral(u, 0.5, 4);
    const int N = g.points_per_axis;
    double scale0 = lp_norm(lap, std::numeric_limits<double>::infinity());
    double worst = 0.0;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            double v1 = lap.values[static_cast<std::int64_t>(a) * N + b];
            double v2 = lap.values[static_cast<std::int64_t>(N - 1 - a) * N + b];
            worst = std::max(worst, std::abs(v1 - v2));
        }
    CHECK(worst <= 1e-9 * scale0);
}
