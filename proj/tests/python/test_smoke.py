"""Smoke tests for the odfrac python module."""

import math

import numpy as np
import pytest

import odfrac


@pytest.fixture(scope="module")
def grid():
    return odfrac.make_grid(1, 10.0, 256)


def test_grid_basics(grid):
    assert grid.dim == 1
    assert grid.points_per_axis == 256
    assert grid.node_count() == 256
    w = sum(grid.weight(i) for i in range(grid.node_count()))
    assert abs(w - 20.0) < 1e-12 * 20.0


def test_sample_and_numpy_round_trip(grid):
    u = odfrac.sample_scalar(odfrac.gaussian(0.0, 1.0, 1.0), grid)
    v = u.values
    assert v.shape == (256,)
    assert v.max() == pytest.approx(1.0, abs=2e-3)  # even grid: peak off-node
    u2 = odfrac.scalar_field(grid, v)
    assert np.array_equal(u2.values, v)


def test_gradient_antisymmetry_and_adjointness(grid):
    u = odfrac.sample_scalar(odfrac.gaussian(0.0, 1.0, 1.0), grid)
    G = odfrac.sample_od(
        odfrac.disjoint_bumps(odfrac.bump(-2.0, 1.0), odfrac.bump(2.0, 1.0)), grid
    )
    d = odfrac.frac_gradient(u, 0.5)
    dense = d.dense()
    assert np.allclose(dense, -dense.T, atol=0.0)
    lhs = odfrac.pair_od(d, G)
    rhs = odfrac.pair_scalar(u, odfrac.frac_divergence(G, 0.5))
    assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), abs(rhs), 1.0)


def test_laplacian_ratio(grid):
    u = odfrac.sample_scalar(odfrac.gaussian(0.0, 1.0, 1.0), grid)
    T = odfrac.frac_laplacian_integral(u, 0.5).values
    S = odfrac.frac_laplacian_spectral(u, 0.5, 16).values
    mask = np.abs(S) > 1e-3 * np.abs(S).max()
    kappa = np.dot(T[mask], S[mask]) / np.dot(S[mask], S[mask])
    assert kappa == pytest.approx(2.0 * math.pi, rel=5e-3)


def test_norms_and_shift(grid):
    u = odfrac.sample_scalar(odfrac.gaussian(0.0, 1.0, 1.0), grid)
    assert odfrac.lp_norm(u, 2.0) == pytest.approx((math.pi / 2.0) ** 0.25, rel=1e-4)
    c, norm = odfrac.best_constant_shift(u, 2.0)
    assert c == pytest.approx(math.sqrt(math.pi) / 20.0, rel=1e-9)
    assert norm > 0.0
    semi = odfrac.gagliardo_seminorm(u, 0.5, 2.0)
    # full-space value 2 pi minus the kernel tail outside the [-10, 10] window
    x = -10.0 + 20.0 * (np.arange(400000) + 0.5) / 400000
    tail = np.sum(np.exp(-2 * x * x) * (1 / (10 - x) + 1 / (10 + x))) * (20.0 / 400000) * 2
    assert semi**2 + tail == pytest.approx(2.0 * math.pi, rel=5e-3)


def test_mollify_preserves_constants(grid):
    c = odfrac.scalar_field(grid, np.full(256, 3.25))
    m = odfrac.mollify_scalar(c, 0.5)
    assert np.allclose(m.values, 3.25, rtol=1e-12, atol=0.0)


def test_chi_counterexample_values():
    v10 = odfrac.chi_counterexample(10.0)
    assert v10 == pytest.approx(20.86212977454484, rel=1e-13)
    assert odfrac.chi_counterexample(100.0) > v10
    with pytest.raises(Exception):
        odfrac.chi_counterexample(1.5)


def test_od_field_from_numpy(grid):
    k = grid.node_count()
    x = np.array(grid.axis_nodes)
    raw = np.subtract.outer(x, x)  # x - y, already antisymmetric
    F = odfrac.od_field(grid, raw)
    assert F.value(3, 1) == pytest.approx(x[3] - x[1])


def test_run_suite_roundtrip():
    ok, payload = odfrac.run_suite("counterexample")
    assert ok
    assert '"suite": "counterexample"' in payload
    assert '"verdict": "pass"' in payload


def test_errors_surface_as_exceptions(grid):
    u = odfrac.sample_scalar(odfrac.gaussian(0.0, 1.0, 1.0), grid)
    with pytest.raises(Exception):
        odfrac.frac_gradient(u, 2.0)
    with pytest.raises(Exception):
        odfrac.make_grid(3, 1.0, 8)
