import numpy as np
import pytest

from paraplex import linespace as LS
from paraplex import tensor
from paraplex.errors import DegenerateLine, HorizontalLine, OutsideHemisphere, PoleOfChart
from paraplex.structures import isometry_sign, parallel_residual


def rand_points(rng, n):
    r = rng.uniform(0.1, 0.85, n)
    a = rng.uniform(0, 2 * np.pi, n)
    eta = 0.5 * (rng.normal(size=n) + 1j * rng.normal(size=n))
    xi = r * np.exp(1j * a)
    return np.column_stack([xi.real, xi.imag, eta.real, eta.imag])


def test_metric_at_origin_off_diagonal():
    g = LS.metric_G().value(np.zeros(4))
    expect = np.zeros((4, 4))
    expect[1, 2] = expect[2, 1] = 2.0
    expect[0, 3] = expect[3, 0] = -2.0
    assert np.allclose(g, expect)


def test_metric_neutral_signature():
    G = LS.metric_G()
    rng = np.random.default_rng(0)
    for p in rand_points(rng, 20):
        assert G.signature_counts(p) == (2, 2)


def test_metric_scalar_flat_conformally_flat_not_einstein():
    G = LS.metric_G()
    rng = np.random.default_rng(1)
    for p in rand_points(rng, 5):
        pack = tensor.curvature(G, p)
        assert abs(pack.scalar) < 1e-8
        assert abs(pack.norms["w2"]) < 1e-8
        assert np.max(np.abs(pack.einstein)) > 1e-3


def test_structure_squares_and_commutation():
    J0, J1, J2 = LS.structures_J012()
    rng = np.random.default_rng(2)
    for p in rand_points(rng, 10):
        v0, v1, v2 = J0.value(p), J1.value(p), J2.value(p)
        assert np.max(np.abs(v0 @ v0 + np.eye(4))) < 1e-12
        assert np.max(np.abs(v1 @ v1 - np.eye(4))) < 1e-12
        assert np.max(np.abs(v2 @ v2 + np.eye(4))) < 1e-12
        assert np.max(np.abs(v0 @ v1 - v1 @ v0)) < 1e-12
        assert np.max(np.abs(v0 @ v1 - v2)) < 1e-12


def test_reflection_structure_at_eta_zero_is_block_diagonal():
    J1 = LS.structures_J012()[1]
    v = J1.value(np.array([0.4, 0.3, 0.0, 0.0]))
    assert np.allclose(v, np.diag([1.0, 1.0, -1.0, -1.0]))


def test_isometry_pattern():
    G = LS.metric_G()
    J0, J1, J2 = LS.structures_J012()
    p = np.array([0.3, 0.1, 0.2, -0.4])
    g0 = G.value(p)
    assert isometry_sign(g0, J0.value(p))[0] == 1
    assert isometry_sign(g0, J1.value(p))[0] == -1
    assert isometry_sign(g0, J2.value(p))[0] == -1


def test_parallelism_pattern_both_metrics():
    G, Gt = LS.metric_G(), LS.metric_G_tilde()
    J0, J1, J2 = LS.structures_J012()
    rng = np.random.default_rng(3)
    pts = rand_points(rng, 10)
    for g in (G, Gt):
        assert parallel_residual(g, J0, pts) < 1e-9
        assert parallel_residual(g, J1, pts) > 1e-3
        assert parallel_residual(g, J2, pts) > 1e-3


def test_gtilde_isometric_to_g():
    G, Gt = LS.metric_G(), LS.metric_G_tilde()
    rng = np.random.default_rng(4)
    pts = rand_points(rng, 10)
    pb = tensor.pullback_metric(LS.eta_rotation_map(), Gt, pts)
    assert np.max(np.abs(pb - G.value(pts))) < 1e-10


def test_phi_origin_axis():
    assert np.allclose(LS.phi(LS.LinePoint(0.0, 0.0), 1.7), [0.0, 0.0, 1.7])


def test_phi_difference_parallel_to_direction():
    rng = np.random.default_rng(5)
    for _ in range(5):
        line = LS.LinePoint(complex(rng.normal(), rng.normal()) * 0.5, complex(rng.normal(), rng.normal()))
        r1, r2 = rng.normal(), rng.normal()
        d = LS.phi(line, r2) - LS.phi(line, r1)
        e0 = LS.line_frame(line.xi).e0
        cross = np.cross(d, e0)
        assert np.max(np.abs(cross)) < 1e-12
        assert abs(np.linalg.norm(d) - abs(r2 - r1)) < 1e-12


def test_phi_equator_line_through_origin():
    out = LS.phi(LS.LinePoint(1.0, 0.0), 0.0)
    assert np.max(np.abs(out)) < 1e-14


def test_frame_normalization():
    fr = LS.line_frame(0.3 + 0.2j)
    assert abs(np.dot(fr.e0, fr.e0) - 1.0) < 1e-14
    assert abs(np.sum(fr.e_plus * fr.e_plus)) < 1e-14          # null
    assert abs(np.sum(fr.e_plus * fr.e_minus) - 1.0) < 1e-14   # cross pairing
    assert abs(np.sum(fr.e_plus * fr.e0)) < 1e-14


def test_pushforward_matches_jets():
    rng = np.random.default_rng(6)
    for _ in range(5):
        line = LS.LinePoint(complex(rng.normal(), rng.normal()) * 0.4, complex(rng.normal(), rng.normal()) * 0.7)
        r = float(rng.normal())
        pf = LS.phi_pushforward(line, r)
        num = LS.phi_wirtinger_jacobian(line, r)
        fr = pf["frame"]
        dxi = pf["dxi"]["e_plus"] * fr.e_plus + pf["dxi"]["e0"] * fr.e0
        deta = pf["deta"]["e_plus"] * fr.e_plus
        assert np.max(np.abs(dxi - num["dxi"])) < 1e-9
        assert np.max(np.abs(deta - num["deta"])) < 1e-9
        # the eta pushforward never acquires a direction component
        assert abs(LS.decompose_in_frame(num["deta"], fr)["e0"]) < 1e-12


def test_pushforward_at_origin():
    pf = LS.phi_pushforward(LS.LinePoint(0.0, 0.0), 0.0)
    assert abs(pf["deta"]["e_plus"] - np.sqrt(2.0)) < 1e-14


def test_reflection_example_and_involution():
    out = LS.reflect_line(LS.LinePoint(0.5, 0.2 + 0.1j))
    assert abs(out.xi - 2.0) < 1e-14
    assert abs(out.eta - (0.8 - 0.4j)) < 1e-14
    back = LS.reflect_line(out)
    assert abs(back.xi - 0.5) < 1e-14 and abs(back.eta - (0.2 + 0.1j)) < 1e-14


def test_reflection_pole_error():
    with pytest.raises(PoleOfChart):
        LS.reflect_line(LS.LinePoint(0.0, 1.0))


def test_reflection_point_action():
    rng = np.random.default_rng(7)
    for _ in range(5):
        line = LS.LinePoint(complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal()))
        if abs(line.xi) < 0.05:
            continue
        r = float(rng.normal())
        a = LS.phi(LS.reflect_line(line), -r)
        b = LS.phi(line, r) * np.array([-1.0, -1.0, 1.0])
        assert np.max(np.abs(a - b)) < 1e-12


def test_conformal_origin():
    cp = LS.to_conformal(LS.LinePoint(0.0, 0.0))
    assert abs(cp.Z1) < 1e-15 and abs(cp.Z2) < 1e-15


def test_conformal_roundtrip_100_points():
    rng = np.random.default_rng(8)
    count = 0
    while count < 100:
        r = rng.uniform(0.02, 0.9)
        a = rng.uniform(0, 2 * np.pi)
        line = LS.LinePoint(r * np.exp(1j * a), complex(rng.normal(), rng.normal()))
        back = LS.from_conformal(LS.to_conformal(line))
        assert abs(back.xi - line.xi) < 1e-10
        assert abs(back.eta - line.eta) < 1e-10
        count += 1


def test_conformal_outside_hemisphere():
    with pytest.raises(OutsideHemisphere):
        LS.to_conformal(LS.LinePoint(1.2, 0.0))


def test_conformal_pullback_equals_metric():
    G = LS.metric_G()
    rng = np.random.default_rng(9)
    pts = rand_points(rng, 10)
    pb = tensor.pullback_metric(LS.conformal_transition(), LS.conformal_metric(), pts)
    assert np.max(np.abs(pb - G.value(pts))) < 1e-9


def test_pluecker_relation_and_errors():
    s, t = np.array([1.0, 2.0, 3.0]), np.array([0.5, -1.0, 2.0])
    px = LS.pluecker(s, t)
    assert abs(px.p @ px.q) < 1e-12
    with pytest.raises(DegenerateLine):
        LS.pluecker(s, s)
    with pytest.raises(HorizontalLine):
        LS.conformal_from_pluecker(LS.pluecker(np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 1.0])))


def test_pluecker_axis_origin():
    px = LS.pluecker(np.array([0.0, 0.0, 0.0]), np.array([0.0, 0.0, -1.0]))
    assert np.allclose(px.q, [0, 0, 1])
    assert np.max(np.abs(LS.conformal_from_pluecker(px))) < 1e-14


def test_pluecker_scaling_invariance():
    s, t = np.array([1.0, 0.5, 2.0]), np.array([0.2, -0.3, 1.0])
    px = LS.pluecker(s, t)
    X = LS.conformal_from_pluecker(px)
    scaled = LS.PlueckerSextet(3.7 * px.p, 3.7 * px.q)
    assert np.allclose(LS.conformal_from_pluecker(scaled), X, atol=1e-12)


def test_pluecker_route_agrees_with_holomorphic_route():
    rng = np.random.default_rng(10)
    checked = 0
    while checked < 50:
        s, t = rng.normal(size=3), rng.normal(size=3)
        q = s - t
        nq = np.linalg.norm(q)
        if nq < 0.3 or q[2] / nq < 0.05:
            continue
        line = LS.line_from_points(s, t)
        if abs(line.xi) >= 0.98:
            continue
        X = LS.conformal_from_pluecker(LS.pluecker(s, t))
        assert np.max(np.abs(X - LS.to_conformal(line).coords())) < 1e-9
        checked += 1
