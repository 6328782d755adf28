import numpy as np
import pytest

from paraplex import topology as T
from paraplex.errors import GridTooCoarse
from paraplex.tensor import curvature_arrays


def test_sphere_rule_volume_exact():
    grid = T.sphere_product_grid(6)
    g, blocks = T.latlong_product_metric(+1)
    tot = T.evaluate_grid(g, grid, need_pm=False, blocks=blocks)
    assert abs(tot["volume"] - (4 * np.pi) ** 2) < 1e-9


def test_gather_path_equals_dense_path():
    pert = T.bump(0.05, 1.05)
    g, blocks = T.latlong_product_metric(-1, perturb1=pert)
    grid = T.sphere_product_grid(5, perturb1=pert)
    dense = g.jets(grid.points)
    from paraplex.topology import _block_jet_data, _gathered_jets

    b1 = _block_jet_data(blocks.block1, grid.factor_points[0], 0)
    b2 = _block_jet_data(blocks.block2, grid.factor_points[1], 2)
    sl = slice(0, grid.points.shape[0])
    for use_fast in (False,) + ((True,) if _have_numba() else ()):
        gathered = _gathered_jets(blocks, grid, sl, b1, b2, use_fast)
        for a, b in zip(gathered, dense):
            assert np.array_equal(a, b)


def _have_numba():
    from paraplex.fastkernel import HAVE_NUMBA

    return HAVE_NUMBA


@pytest.mark.skipif(not _have_numba(), reason="numba unavailable")
def test_fast_kernel_matches_einsum():
    pert = T.bump(0.05, 1.05)
    g, _ = T.latlong_product_metric(-1, perturb1=pert)
    grid = T.sphere_product_grid(4, perturb1=pert)
    g0, dg, d2g = g.jets(grid.points[:40])
    ref = curvature_arrays(g0, dg, d2g, need_pm=True, signature="neutral")
    from paraplex.fastkernel import invariants_fast

    fast = invariants_fast(g0, dg, d2g, True)
    for k in ("S", "ric2", "ein2", "w2", "wp2", "wm2", "sqrtdet"):
        assert np.max(np.abs(np.atleast_1d(ref[k]) - fast[k])) < 1e-10


def test_round_product_chi_and_tau_small_grid():
    # constant integrand: exact at any rule size
    g, blocks = T.latlong_product_metric(+1)
    grid = T.sphere_product_grid(6)
    tot = T.evaluate_grid(g, grid, need_pm=True, blocks=blocks)
    assert abs(T.cgb_estimate(g, grid, totals=tot) - 4.0) < 1e-9
    assert abs(T.signature_estimate(g, grid, totals=tot)) < 1e-9


def test_neutral_product_chi_and_ricci_route():
    g, blocks = T.latlong_product_metric(-1)
    grid = T.sphere_product_grid(6)
    tot = T.evaluate_grid(g, grid, need_pm=True, blocks=blocks)
    chi = T.cgb_estimate(g, grid, totals=tot)
    assert abs(chi - 4.0) < 1e-9
    assert abs(T.ricci_route_chi(tot) - chi) < 1e-9
    assert abs(T.signature_estimate(g, grid, totals=tot)) < 1e-9


def test_flat_torus_zero():
    g, blocks = T.flat_torus_metric()
    grid = T.torus_grid(5)
    tot = T.evaluate_grid(g, grid, need_pm=True, blocks=blocks)
    assert T.cgb_estimate(g, grid, totals=tot) == 0.0
    assert T.signature_estimate(g, grid, totals=tot) == 0.0


def test_volume_gate():
    pert = T.bump(0.05, 1.02)  # pole too close for a coarse rule
    g, blocks = T.latlong_product_metric(+1, perturb1=pert)
    grid = T.sphere_product_grid(8, perturb1=pert)
    with pytest.raises(GridTooCoarse):
        T.evaluate_grid(g, grid, need_pm=False, blocks=blocks)


def test_obstruction_k3():
    rep = T.obstruction_report(T.k3_profile())
    assert rep["chi"] == 24 and rep["tau"] == 16
    assert rep["hitchin_thorpe"]
    assert rep["neutral_metric_congruences"]  # 40 and 8 are both 0 mod 4
    assert rep["parallel_obstruction"]


def test_obstruction_cp2_table():
    for k in range(10):
        rep = T.obstruction_report(T.cp2_connected_sum_profile(k))
        assert rep["chi"] == 3 + k
        assert rep["tau"] == 1 - k
        assert rep["chi"] + rep["tau"] == 4
        assert rep["chi"] - rep["tau"] == 2 + 2 * k
        assert rep["hitchin_thorpe"] == (k <= 9)
        assert rep["neutral_metric_congruences"] == (k % 2 == 1)
        assert rep["parallel_obstruction"] == (k != 1)
    assert not T.obstruction_report(T.cp2_connected_sum_profile(10))["hitchin_thorpe"]


def test_obstruction_s2xs2():
    rep = T.obstruction_report(T.s2xs2_profile())
    assert not rep["parallel_obstruction"]
    assert rep["chi"] == 4 and rep["tau"] == 0


def test_hitchin_thorpe_boundary_logic():
    # chi = 3 + k, tau = 1 - k: equality at k = 9, violation beyond
    assert T.obstruction_report(T.TopologicalProfile("k9", 12, -8))["hitchin_thorpe"]
    assert not T.obstruction_report(T.TopologicalProfile("k10", 13, -9))["hitchin_thorpe"]
