import numpy as np
import pytest

from paraplex import products, tensor
from paraplex.structures import classify, parallel_residual

RNG = np.random.default_rng(0)
POINTS = RNG.uniform(-0.4, 0.4, size=(5, 4))


def test_factor_gauss_curvature_matches_declared():
    # embed a single factor as a block against a flat factor and read the 4D
    # scalar curvature: S = 2 kappa for (factor x flat)
    for kappa in (1.0, 2.0, -1.0):
        geo = products.build_product(products.sphere_factor(kappa), products.flat_factor(), +1)
        for p in POINTS[:3]:
            pack = tensor.curvature(geo.metric, p, need_pm=False)
            assert abs(pack.scalar - 2.0 * kappa) < 1e-8


@pytest.mark.parametrize("k1,k2", [(1.0, 1.0), (1.0, 0.0), (1.0, 2.0), (1.0, -1.0)])
@pytest.mark.parametrize("eps", [1, -1])
def test_closed_form_curvature(k1, k2, eps):
    geo = products.build_product(products.sphere_factor(k1), products.sphere_factor(k2), eps)
    cf = products.closed_form_curvature(k1, k2, eps)
    for p in POINTS:
        pack = tensor.curvature(geo.metric, p, need_pm=False)
        assert abs(pack.scalar - cf["R"]) < 1e-7
        assert abs(pack.norms["ric2"] - cf["ric2"]) < 1e-7
        assert abs(pack.norms["ein2"] - cf["ein2"]) < 1e-7
        if cf["weyl_shape"] > 1e-12:
            assert abs(pack.norms["w2"] / cf["weyl_shape"] - products.STANDARD_WEYL_FACTOR) < 1e-7


def test_closed_form_numbers():
    cf = products.closed_form_curvature(1.0, 1.0, +1)
    assert cf["R"] == 4.0 and cf["ric2"] == 4.0 and cf["ein2"] == 0.0
    cf = products.closed_form_curvature(1.0, 1.0, -1)
    assert cf["R"] == 0.0 and cf["ein2"] == 4.0 and cf["weyl_shape"] == 0.0
    cf = products.closed_form_curvature(1.0, 0.0, +1)
    assert cf["R"] == 2.0 and cf["ric2"] == 2.0 and cf["ein2"] == 1.0


def test_measured_weyl_factor_is_twice_published():
    assert abs(products.STANDARD_WEYL_FACTOR / products.PUBLISHED_WEYL_FACTOR - 2.0) < 1e-14


def test_flat_torus_factors_zero_curvature():
    geo = products.build_product(products.flat_factor(), products.flat_factor(), +1)
    pack = tensor.curvature(geo.metric, POINTS[0], need_pm=False)
    assert np.max(np.abs(pack.riemann)) == 0.0


def test_structures_isometric_and_parallel():
    for f1, f2, eps in (
        (products.sphere_factor(1.0), products.sphere_factor(2.0), +1),
        (products.sphere_factor(1.0), products.sphere_factor(2.0), -1),
        (products.bumpy_sphere_factor(0.3), products.sphere_factor(1.0), +1),
        (products.bumpy_sphere_factor(0.3), products.flat_factor(), -1),
    ):
        geo = products.build_product(f1, f2, eps)
        assert parallel_residual(geo.metric, geo.J, POINTS) < 1e-8
        for p in POINTS[:2]:
            g0 = geo.metric.value(p)
            assert classify(g0, geo.J.value(p)).kind == "isometric"
            # J1, J2 are isometric complex structures squaring to -1
            for J in (geo.J1, geo.J2):
                v = J.value(p)
                assert np.max(np.abs(v @ v + np.eye(4))) < 1e-12
                assert np.max(np.abs(v.T @ g0 @ v - g0)) < 1e-10
        # J is the product of the two complex structures, up to the overall
        # sign fixed by the associated-metric identity
        v = geo.J1.value(POINTS[0]) @ geo.J2.value(POINTS[0])
        assert np.max(np.abs(v + geo.J.value(POINTS[0]))) < 1e-12


def test_ricci_equality_between_signs():
    ga = products.build_product(products.sphere_factor(1.0), products.sphere_factor(2.0), +1)
    gb = products.build_product(products.sphere_factor(1.0), products.sphere_factor(2.0), -1)
    for p in POINTS:
        ra = tensor.curvature(ga.metric, p, need_pm=False).ricci
        rb = tensor.curvature(gb.metric, p, need_pm=False).ricci
        assert np.max(np.abs(ra - rb)) < 1e-8


def test_associated_metric_swaps_sign():
    ga = products.build_product(products.sphere_factor(1.0), products.sphere_factor(2.0), +1)
    gb = products.build_product(products.sphere_factor(1.0), products.sphere_factor(2.0), -1)
    from paraplex.structures import associated_metric

    gp = associated_metric(ga.metric, ga.J)
    assert np.max(np.abs(gp.value(POINTS) - gb.metric.value(POINTS))) < 1e-12


@pytest.mark.parametrize(
    "k1,k2,eps,expect",
    [
        (1.0, 1.0, -1, True),
        (1.0, 2.0, -1, False),
        (1.0, -1.0, +1, True),
    ],
)
def test_corollary_equivalence(k1, k2, eps, expect):
    rep = products.corollary_check(k1, k2, eps, POINTS[:3])
    assert rep["equivalent"]
    assert rep["curvature_match"] is expect
    assert rep["conformally_flat_scalar_flat"] is expect
    assert rep["opposite_einstein"] is expect
    if not expect:
        assert rep["weyl_sup"] > 1e-2
        assert rep["einstein_sup"] > 1e-2
