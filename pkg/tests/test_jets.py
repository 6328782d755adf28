import numpy as np
import pytest

from paraplex import jets
from paraplex.errors import DivisionByZero, DomainError, SingularMatrix
from paraplex.jets import ComplexJet, Jet2, abs2, complex_pair, fd_oracle, jet_apply, jet_seed
from paraplex.linalg import checked_inverse, ring_inverse


def random_jet(rng, batch=()):
    h = rng.normal(size=batch + (4, 4))
    return Jet2(rng.normal(size=batch) + 2.0, rng.normal(size=batch + (4,)), h + np.swapaxes(h, -1, -2))


def test_seed_basics():
    j = jet_seed((1.0, 2.0, 3.0, 4.0), 2)
    assert j.value == 3.0
    assert np.allclose(j.grad, [0, 0, 1, 0])
    assert np.all(j.hess == 0.0)


def test_seed_square():
    j = jet_seed((1.0, 2.0, 3.0, 4.0), 2)
    sq = j * j
    assert sq.value == 9.0
    assert np.allclose(sq.grad, [0, 0, 6, 0])
    assert sq.hess[2, 2] == 2.0


def test_seed_axis_validation():
    with pytest.raises(ValueError):
        jet_seed((0.0, 0.0, 0.0, 0.0), 5)


def test_sin_product_vs_fd():
    f = lambda x0, x1, x2, x3: jets.sin(x0 * x1)
    p = (0.7, 0.3, 0.0, 0.0)
    j = jet_apply(f, p)
    gr, he = fd_oracle(f, p)
    assert np.max(np.abs(j.grad - gr)) < 1e-6
    assert np.max(np.abs(j.hess - he)) < 1e-6


def test_constant_program():
    j = jet_apply(lambda *xs: 5.0, (1.0, 1.0, 1.0, 1.0))
    assert j.value == 5.0
    assert np.all(j.grad == 0.0) and np.all(j.hess == 0.0)


def _omega(x0, x1, x2, x3):
    z1, z2 = complex_pair((x0, x1, x2, x3))
    return (1.0 + 0.25 * abs2(z1 - z2)) ** (-0.5)


def test_conformal_factor_order0():
    p = (0.3, 0.1, -0.2, 0.4)
    j = jet_apply(_omega, p)
    direct = (1.0 + 0.25 * abs(complex(0.3, 0.1) - complex(-0.2, 0.4)) ** 2) ** (-0.5)
    assert abs(float(j.value) - direct) < 1e-14


def test_conformal_factor_hessian_vs_fd():
    p = (0.3, 0.1, -0.2, 0.4)
    j = jet_apply(_omega, p)
    _, he = fd_oracle(_omega, p, hess_step=1e-4)
    assert np.max(np.abs(j.hess - he)) < 1e-5


def test_fd_oracle_basics():
    g, _ = fd_oracle(lambda x0, x1, x2, x3: x0 * x0, (3.0, 0, 0, 0), grad_step=1e-4)
    assert abs(g[0] - 6.0) < 1e-7
    _, h = fd_oracle(lambda x0, x1, x2, x3: x0 * x1, (0.4, -0.2, 0, 0))
    assert abs(h[0, 1] - 1.0) < 1e-7


def test_fd_agrees_on_random_points():
    rng = np.random.default_rng(0)
    for _ in range(10):
        p = rng.uniform(-0.6, 0.6, 4)
        j = jet_apply(_omega, p)
        gr, he = fd_oracle(_omega, p)
        assert np.max(np.abs(j.grad - gr)) < 1e-5
        assert np.max(np.abs(j.hess - he)) < 1e-5


def test_ring_laws():
    rng = np.random.default_rng(1)
    for _ in range(20):
        a, b, c = (random_jet(rng) for _ in range(3))
        lhs = (a + b) + c
        rhs = a + (b + c)
        assert np.max(np.abs(lhs.value - rhs.value)) < 1e-12
        d1 = a * (b + c)
        d2 = a * b + a * c
        for f in ("value", "grad", "hess"):
            assert np.max(np.abs(getattr(d1, f) - getattr(d2, f))) < 1e-12


def test_chain_rule_against_oracle():
    rng = np.random.default_rng(2)
    progs = [
        lambda x0, x1, x2, x3: jets.sin(jets.exp(0.3 * x0) + x1 * x2),
        lambda x0, x1, x2, x3: jets.log(2.0 + jets.cos(x0 * x3)) / (1.5 + x1 * x1),
        lambda x0, x1, x2, x3: (1.0 + x0 * x0 + jets.sin(x1) ** 2) ** 0.5,
        lambda x0, x1, x2, x3: jets.atan2(x1 + 0.2, 1.0 + x0 * x2),
    ]
    count = 0
    for _ in range(25):
        p = rng.uniform(-0.7, 0.7, 4)
        for f in progs:
            j = jet_apply(f, p)
            gr, he = fd_oracle(f, p)
            assert np.max(np.abs(j.grad - gr)) < 1e-5
            assert np.max(np.abs(j.hess - he)) < 1e-4
            count += 1
    assert count == 100


def test_complex_conjugation_multiplicative():
    rng = np.random.default_rng(3)
    for _ in range(10):
        a = ComplexJet(random_jet(rng), random_jet(rng))
        b = ComplexJet(random_jet(rng), random_jet(rng))
        lhs = (a * b).conj()
        rhs = a.conj() * b.conj()
        for part in ("re", "im"):
            for f in ("value", "grad", "hess"):
                assert np.array_equal(getattr(getattr(lhs, part), f), getattr(getattr(rhs, part), f))


def test_division_by_zero_guard():
    z = Jet2.constant(0.0)
    with pytest.raises(DivisionByZero):
        Jet2.constant(1.0) / z


def test_domain_errors():
    with pytest.raises(DomainError):
        jets.sqrt(Jet2.constant(-1.0))
    with pytest.raises(DomainError):
        jets.log(Jet2.constant(0.0))
    with pytest.raises(DomainError):
        jets.power(Jet2.constant(-2.0), 0.5)


def test_batched_matches_pointwise():
    rng = np.random.default_rng(4)
    pts = rng.uniform(-0.5, 0.5, (7, 4))
    xs = jets.seed_point(pts)
    batched = _omega(*xs)
    for i, p in enumerate(pts):
        single = jet_apply(_omega, p)
        assert np.allclose(batched.value[i], single.value, atol=1e-15)
        assert np.allclose(batched.grad[i], single.grad, atol=1e-15)
        assert np.allclose(batched.hess[i], single.hess, atol=1e-15)


def test_mat4_inverse_roundtrip():
    rng = np.random.default_rng(5)
    for _ in range(20):
        m = rng.normal(size=(4, 4)) + 4.0 * np.eye(4)
        inv = checked_inverse(m)
        assert np.max(np.abs(inv @ m - np.eye(4))) < 1e-12
        assert np.max(np.abs(checked_inverse(inv) - m)) < 1e-10


def test_mat4_singular_guard():
    m = np.ones((4, 4))
    with pytest.raises(SingularMatrix):
        checked_inverse(m)


def test_ring_inverse_over_jets():
    rng = np.random.default_rng(6)
    mats = [[random_jet(rng) * 0.1 for _ in range(4)] for _ in range(4)]
    for i in range(4):
        mats[i][i] = mats[i][i] + 3.0
    inv = ring_inverse(mats)
    for i in range(4):
        for j in range(4):
            acc = None
            for k in range(4):
                term = mats[i][k] * inv[k][j]
                acc = term if acc is None else acc + term
            target = 1.0 if i == j else 0.0
            assert np.max(np.abs(acc.value - target)) < 1e-12
            assert np.max(np.abs(acc.grad)) < 1e-11
