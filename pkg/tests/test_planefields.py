import numpy as np
import pytest

from paraplex import planefields as PF
from paraplex import products
from paraplex.errors import IndefinitePlane
from paraplex.fields import Chart, MetricField, StructureField, constant_structure
from paraplex.jets import cos, sin

FLAT = MetricField(
    Chart("flat"),
    lambda xs: [[1.0 if i == j else 0.0 for j in range(4)] for i in range(4)],
    "riemannian",
    name="flat",
)
NEUTRAL = MetricField(
    Chart("flat-neutral"),
    lambda xs: [[(1.0, 1.0, -1.0, -1.0)[i] if i == j else 0.0 for j in range(4)] for i in range(4)],
    "neutral",
    name="flat-neutral",
)


def coord_span(i, j):
    def span(xs):
        v1 = [1.0 if a == i else 0.0 for a in range(4)]
        v2 = [1.0 if a == j else 0.0 for a in range(4)]
        return v1, v2

    return span


def sphere_span(xs):
    x0, x1, x2, x3 = xs
    return [-x1, x0, 0.0, 0.0], [x0 * x2, x1 * x2, -(x0 * x0 + x1 * x1), 0.0]


def test_adapted_frame_flat_coordinates():
    fr = PF.adapted_frame(FLAT, coord_span(0, 1), np.array([0.3, 0.1, 0.2, 0.5]))
    assert np.allclose(np.abs(fr.vectors), np.eye(4)[[0, 1, 2, 3]], atol=1e-12)
    gram = fr.vectors @ fr.vectors.T
    assert np.max(np.abs(gram - np.eye(4))) < 1e-10


def test_adapted_frame_product_blocks():
    geo = products.build_product(products.sphere_factor(1.0), products.sphere_factor(2.0), +1)
    p = np.array([0.2, -0.1, 0.4, 0.3])
    fr = PF.adapted_frame(geo.metric, coord_span(0, 1), p)
    g0 = geo.metric.value(p)
    gram = fr.vectors @ g0 @ fr.vectors.T
    assert np.max(np.abs(gram - np.eye(4))) < 1e-10
    # cross-block products vanish
    assert np.max(np.abs(gram[:2, 2:])) < 1e-12


def test_null_plane_rejected():
    # an alpha-plane in the neutral metric: x0 = x2, x1 = x3 directions
    def null_span(xs):
        return [1.0, 0.0, 1.0, 0.0], [0.0, 1.0, 0.0, 1.0]

    with pytest.raises(IndefinitePlane):
        PF.adapted_frame(NEUTRAL, null_span, np.zeros(4))


def test_product_factor_planes_are_invariant_free():
    geo = products.build_product(products.sphere_factor(1.0), products.sphere_factor(2.0), +1)
    rng = np.random.default_rng(0)
    for p in rng.uniform(-0.4, 0.4, (4, 4)):
        inv = PF.np_invariants(geo.metric, coord_span(0, 1), p)
        assert inv.max_invariant() < 1e-9


@pytest.mark.parametrize("r", [1.0, 2.0])
def test_sphere_slice_curvature(r):
    q = np.array([r * 0.5, r * 0.6, r * np.sqrt(1 - 0.25 - 0.36), 0.7])
    inv = PF.np_invariants(FLAT, sphere_span, q)
    assert abs(inv.lam) < 1e-10                      # integrable
    assert abs(inv.rho) > 1e-3                        # not minimal
    assert abs(inv.leaf_gauss_curvature() - 1.0 / r**2) < 1e-6


def test_cylinder_slice_flat_leaves():
    def cyl_span(xs):
        x0, x1, x2, x3 = xs
        return [-x1, x0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]

    q = np.array([0.6, 0.8, 0.3, 0.1])
    inv = PF.np_invariants(FLAT, cyl_span, q)
    assert abs(inv.lam) < 1e-12
    assert abs(inv.leaf_gauss_curvature()) < 1e-10
    assert abs(inv.rho) > 1e-3  # mean curvature nonzero: not minimal


def test_minimality_pattern():
    # product fixture: rho = 0 (minimal leaves); sphere slices: rho != 0
    geo = products.build_product(products.sphere_factor(1.0), products.sphere_factor(2.0), +1)
    p = np.array([0.2, -0.1, 0.4, 0.3])
    assert abs(PF.np_invariants(geo.metric, coord_span(0, 1), p).rho) < 1e-10
    q = np.array([0.5, 0.6, 0.3, 0.7])
    assert abs(PF.np_invariants(FLAT, sphere_span, q).rho) > 1e-3


def test_twist_nonzero_for_twisted_family():
    # the plane contains the direction along which it rotates: genuine twist
    def twisted(xs):
        x0, x1, x2, x3 = xs
        t = 0.4 * x3
        return [cos(t), sin(t), 0.0, 0.0], [0.0, 0.0, 0.0, 1.0]

    inv = PF.np_invariants(FLAT, twisted, np.array([0.2, 0.1, 0.4, 0.3]))
    assert abs(inv.lam) > 1e-3


def test_normal_rotation_shows_in_hatted_invariants_only():
    # rotation parameter transverse to the plane: tangent set vanishes, the
    # orthogonal plane field carries the first-order data
    def rotating(xs):
        x0, x1, x2, x3 = xs
        t = 0.4 * x3
        return [cos(t), sin(t), 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]

    inv = PF.np_invariants(FLAT, rotating, np.array([0.2, 0.1, 0.4, 0.3]))
    assert abs(inv.lam) < 1e-12 and abs(inv.rho) < 1e-12
    assert max(abs(inv.sigma_plus_hat), abs(inv.sigma_minus_hat), abs(inv.rho_hat), abs(inv.lam_hat)) > 1e-3


def test_equivalence_zero_fixtures():
    rng = np.random.default_rng(1)
    pts = rng.uniform(-0.4, 0.4, (4, 4))
    geo = products.build_product(products.sphere_factor(1.0), products.sphere_factor(2.0), +1)
    fixtures = [
        (geo.metric, geo.J),
        (FLAT, constant_structure(FLAT.chart, np.diag([1.0, 1.0, -1.0, -1.0]), +1)),
        (
            (g2 := products.build_product(products.bumpy_sphere_factor(0.3), products.sphere_factor(1.0), +1)).metric,
            g2.J,
        ),
    ]
    for g, j in fixtures:
        rep = PF.parallel_equivalence_check(g, j, pts)
        assert rep["equivalent"] and rep["parallel"]
        assert rep["max_invariant"] < 1e-8 and rep["parallel_residual"] < 1e-8


def test_equivalence_nonzero_fixtures():
    rng = np.random.default_rng(2)
    pts = rng.uniform(-0.4, 0.4, (4, 4))

    def rot_j(xs):
        x0 = xs[0]
        c, s = cos(0.2 * x0), sin(0.2 * x0)
        z = 0.0
        return [[-1.0, z, z, z], [z, c, s, z], [z, s, -1.0 * c, z], [z, z, z, 1.0]]

    def slice_j(xs):
        x0, x1, x2, x3 = xs
        r2 = x0 * x0 + x1 * x1 + x2 * x2
        n = [x0, x1, x2]
        out = [[0.0] * 4 for _ in range(4)]
        for a in range(3):
            for b in range(3):
                out[a][b] = (1.0 if a == b else 0.0) - (2.0 / r2) * (n[a] * n[b])
        out[3][3] = -1.0
        return out

    fixtures = [
        (FLAT, StructureField(FLAT.chart, rot_j, +1), pts),
        (FLAT, StructureField(FLAT.chart, slice_j, +1), pts + np.array([0.8, 0.7, 0.9, 0.0])),
    ]
    for g, j, sample in fixtures:
        rep = PF.parallel_equivalence_check(g, j, sample)
        assert rep["equivalent"] and not rep["parallel"]
        assert rep["max_invariant"] > 1e-3 and rep["parallel_residual"] > 1e-3
