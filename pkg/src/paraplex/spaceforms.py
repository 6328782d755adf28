"""Spaces of oriented geodesics of the four real space forms, through the
Grassmannian bivector model.

A chart point u parameterizes the oriented plane spanned by

    c1 = e_a + u1 e_c + u3 e_d,      c2 = e_b + u2 e_c + u4 e_d,

where (a, b) are base axes chosen per signature row so that the signed
Gram-Schmidt normalization <x,x> = 1, <y,y> = eps succeeds near u = 0, and
(c, d) are the remaining axes.  The embedded point is the unit decomposable
bivector B = c1^c2 / sqrt(eps <<c1^c2, c1^c2>>) = x^y, whose u-derivatives
have the closed form used throughout (so that metric components remain
exactly twice differentiable inside second-order jets).

The rotation J on the plane orthogonal to x^y carries a per-row global sign
(an orientation convention the construction does not pin down); the signs
below are fixed once so that the ambient Hodge star restricted to the tangent
space equals -Jstar with Jstar = -J'J.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ChartDegeneracy,
    FrameDegeneracy,
    NormalizationImpossible,
)
from .fields import Chart, MetricField, StructureField
from .jets import Jet2, sqrt
from .linalg import ring_inverse
from .tensor import PAIRS

# base axes (a, b) per admissible (p, eps); rows absent from the table get a
# best-effort base whose normalization then fails with the right error
BASE_AXES = {
    (0, +1): (0, 1),
    (1, +1): (1, 2),
    (1, -1): (1, 0),
    (2, +1): (2, 3),
    (2, -1): (2, 0),
    (3, -1): (3, 0),
    (0, -1): (0, 1),
    (3, +1): (3, 0),
}

# Global sign of the complement rotation J per row, anchored so that the
# ambient star restricted to the tangent space equals -Jstar exactly.  (With
# the opposite signs the star relations *(x^X) = -y^JX, *(y^Y) = +-x^JY hold
# instead, and the restriction comes out as +Jstar; only the global sign of J
# moves between the two conventions.)
J_SIGN = {
    (0, +1): -1.0,
    (1, +1): +1.0,
    (1, -1): +1.0,
    (2, +1): +1.0,
    (2, -1): +1.0,
    (3, -1): -1.0,
}

ADMISSIBLE = tuple(sorted(J_SIGN.keys()))

TABLE1 = {
    (0, +1): (("complex", "isometric"), ("complex", "isometric"), ("para", "isometric")),
    (1, +1): (("para", "anti"), ("complex", "isometric"), ("complex", "anti")),
    (1, -1): (("complex", "isometric"), ("para", "anti"), ("complex", "anti")),
    (2, +1): (("complex", "isometric"), ("complex", "isometric"), ("para", "isometric")),
    (2, -1): (("para", "anti"), ("para", "anti"), ("para", "isometric")),
    (3, -1): (("complex", "isometric"), ("para", "anti"), ("complex", "anti")),
}


@dataclass(frozen=True)
class AmbientSignature:
    p: int
    eps: int

    def __post_init__(self):
        if self.p not in (0, 1, 2, 3) or self.eps not in (-1, +1):
            raise ValueError("p in 0..3 and eps in {-1, +1} required")

    @property
    def diag(self) -> np.ndarray:
        return np.array([-1.0] * self.p + [1.0] * (4 - self.p))

    @property
    def admissible(self) -> bool:
        return (self.p, self.eps) in J_SIGN

    @property
    def name(self) -> str:
        return f"L{'+' if self.eps > 0 else '-'}(S3_{self.p})"

    def chart(self) -> Chart:
        return Chart(f"geodesic-{self.name}", ("u1", "u2", "u3", "u4"))


@dataclass(frozen=True)
class OrientedPlanePoint:
    x: np.ndarray
    y: np.ndarray


def _ip(sig, u, v):
    """Pseudo-Euclidean inner product over jets or floats, diag signs sig."""
    acc = None
    for i in range(4):
        if sig[i] == 0.0:
            continue
        term = (u[i] * v[i]) * float(sig[i])
        acc = term if acc is None else acc + term
    return acc


def _wedge6(u, v):
    return [u[i] * v[j] - u[j] * v[i] for (i, j) in PAIRS]


def _lam2_weights(sig) -> np.ndarray:
    return np.array([sig[i] * sig[j] for (i, j) in PAIRS])


def _ip6(sig, A, B):
    w = _lam2_weights(sig)
    acc = None
    for k in range(6):
        term = (A[k] * B[k]) * float(w[k])
        acc = term if acc is None else acc + term
    return acc


def _value_of(x) -> float:
    return float(np.min(np.asarray(x.value if isinstance(x, Jet2) else x)))


def _columns(sig: AmbientSignature, xs):
    a, b = BASE_AXES[(sig.p, sig.eps)]
    free = [i for i in range(4) if i not in (a, b)]
    c, d = free
    u1, u2, u3, u4 = xs
    c1 = [0.0] * 4
    c2 = [0.0] * 4
    c1[a] = 1.0
    c1[c] = u1
    c1[d] = u3
    c2[b] = 1.0
    c2[c] = u2
    c2[d] = u4
    ec = [1.0 if i == c else 0.0 for i in range(4)]
    ed = [1.0 if i == d else 0.0 for i in range(4)]
    return c1, c2, ec, ed


def plane_pair(sig: AmbientSignature, xs) -> tuple[list, list]:
    """Signed Gram-Schmidt pair (x, y) with <x,x> = 1, <y,y> = eps."""
    diag = sig.diag
    c1, c2, _, _ = _columns(sig, xs)
    n1 = _ip(diag, c1, c1)
    n1v = _value_of(n1)
    if n1v < 1e-8:
        raise (ChartDegeneracy if abs(n1v) < 1e-8 else NormalizationImpossible)(
            "first spanning vector is not spacelike-unit normalizable"
        )
    x = [ci / sqrt(n1) for ci in c1]
    proj = _ip(diag, c2, x)
    yp = [c2[i] - proj * x[i] for i in range(4)]
    n2 = _ip(diag, yp, yp)
    n2v = _value_of(n2)
    if n2v * sig.eps <= 0 or abs(n2v) < 1e-8:
        raise NormalizationImpossible(
            f"second vector has causal type {np.sign(n2v):+.0f}, needs {sig.eps:+d}"
        )
    y = [yi / sqrt(float(sig.eps) * n2) for yi in yp]
    return x, y


def chart_to_plane(sig: AmbientSignature, u) -> OrientedPlanePoint:
    u = np.asarray(u, dtype=float)
    x, y = plane_pair(sig, tuple(u))
    return OrientedPlanePoint(np.array([float(v) for v in x]), np.array([float(v) for v in y]))


def _embedding_data(sig: AmbientSignature, xs):
    """B, its exact chart derivatives t_k, and the plane pair, over jets."""
    diag = sig.diag
    c1, c2, ec, ed = _columns(sig, xs)
    W = _wedge6(c1, c2)
    dW = [
        _wedge6(ec, c2),   # d/du1: dc1 = ec
        _wedge6(c1, ec),   # d/du2: dc2 = ec
        _wedge6(ed, c2),   # d/du3: dc1 = ed
        _wedge6(c1, ed),   # d/du4: dc2 = ed
    ]
    nW = _ip6(diag, W, W) * float(sig.eps)
    if _value_of(nW) <= 1e-10:
        raise ChartDegeneracy("bivector norm degenerate")
    s = sqrt(nW)
    inv_s = 1.0 / s
    B = [w * inv_s for w in W]
    ts = []
    for k in range(4):
        ds = (_ip6(diag, W, dW[k]) * float(sig.eps)) * inv_s
        inv_s2 = inv_s * inv_s
        ts.append([dW[k][i] * inv_s - W[i] * ds * inv_s2 for i in range(6)])
    return B, ts


def metric_Gp(sig: AmbientSignature) -> MetricField:
    if not sig.admissible:
        raise NormalizationImpossible(f"{sig.name} is not an admissible geodesic space")
    diag = sig.diag

    def components(xs):
        _, ts = _embedding_data(sig, xs)
        out = [[None] * 4 for _ in range(4)]
        for i in range(4):
            for j in range(i, 4):
                v = _ip6(diag, ts[i], ts[j])
                out[i][j] = v
                if i != j:
                    out[j][i] = v
        return out

    # signature of G_p varies per row; detect once at the chart center
    probe = MetricField(sig.chart(), components, "riemannian", name=f"G_{sig.name}")
    npos, nneg = probe.signature_counts(np.zeros(4))
    tag = {(4, 0): "riemannian", (2, 2): "neutral", (3, 1): "lorentz", (1, 3): "lorentz", (0, 4): "riemannian"}[
        (npos, nneg)
    ]
    return MetricField(sig.chart(), components, tag, name=f"G_{sig.name}")


def _complement_frame(sig: AmbientSignature, xs, x, y):
    """Orthonormal-with-signs basis (w1, w2) of the plane orthogonal to (x, y)."""
    diag = sig.diag
    _, _, ec, ed = _columns(sig, xs)

    def project(v):
        px = _ip(diag, v, x)
        py = _ip(diag, v, y) * float(sig.eps)
        return [v[i] - px * x[i] - py * y[i] for i in range(4)]

    w1p = project(ec)
    n1 = _ip(diag, w1p, w1p)
    s1 = float(np.sign(_value_of(n1)))
    if abs(_value_of(n1)) < 1e-8:
        raise FrameDegeneracy("first complement pivot underflow")
    w1 = [v / sqrt(s1 * n1) for v in w1p]
    w2p = project(ed)
    c = _ip(diag, w2p, w1) * s1
    w2p = [w2p[i] - c * w1[i] for i in range(4)]
    n2 = _ip(diag, w2p, w2p)
    s2 = float(np.sign(_value_of(n2)))
    if abs(_value_of(n2)) < 1e-8:
        raise FrameDegeneracy("second complement pivot underflow")
    w2 = [v / sqrt(s2 * n2) for v in w2p]
    return (w1, s1), (w2, s2)


def _structure_matrices(sig: AmbientSignature, xs):
    """Chart matrices of (J, J', Jstar) at the jet point xs."""
    diag = sig.diag
    eps = float(sig.eps)
    x, y = plane_pair(sig, xs)
    _, ts = _embedding_data(sig, xs)
    (w1, s1), (w2, s2) = _complement_frame(sig, xs, x, y)
    t_rot = J_SIGN[(sig.p, sig.eps)]
    definite = s1 * s2 > 0

    def J_comp(v):  # image of a complement vector under the rotation J
        a = _ip(diag, v, w1) * s1
        b = _ip(diag, v, w2) * s2
        jw1 = [t_rot * w for w in w2]
        jw2 = [(-t_rot if definite else t_rot) * w for w in w1]
        return [a * jw1[i] + b * jw2[i] for i in range(4)]

    # decompose each tangent vector t_k = x^X_k + y^Y_k
    Xs, Ys = [], []
    for k in range(4):
        xw = [_ip6(diag, ts[k], _wedge6(x, w)) for w in (w1, w2)]
        yw = [_ip6(diag, ts[k], _wedge6(y, w)) * eps for w in (w1, w2)]
        Xs.append([s1 * xw[0] * w1[i] + s2 * xw[1] * w2[i] for i in range(4)])
        Ys.append([s1 * yw[0] * w1[i] + s2 * yw[1] * w2[i] for i in range(4)])

    gram = [[_ip6(diag, ts[i], ts[j]) for j in range(4)] for i in range(4)]
    gram_inv = ring_inverse(gram)

    def express(images):
        """M^j_k with images[k] = E(t_k) as bivectors."""
        M = [[None] * 4 for _ in range(4)]
        for k in range(4):
            rhs = [_ip6(diag, ts[l], images[k]) for l in range(4)]
            for j in range(4):
                acc = None
                for l in range(4):
                    term = gram_inv[j][l] * rhs[l]
                    acc = term if acc is None else acc + term
                M[j][k] = acc
        return M

    imgs_J, imgs_Jp = [], []
    for k in range(4):
        JX, JY = J_comp(Xs[k]), J_comp(Ys[k])
        imgs_J.append([a + b for a, b in zip(_wedge6(x, JX), _wedge6(y, JY))])
        imgs_Jp.append([a - eps * b for a, b in zip(_wedge6(y, Xs[k]), _wedge6(x, Ys[k]))])
    MJ = express(imgs_J)
    MJp = express(imgs_Jp)
    MJstar = [[None] * 4 for _ in range(4)]
    for a in range(4):
        for b in range(4):
            acc = None
            for m in range(4):
                term = MJp[a][m] * MJ[m][b]
                acc = term if acc is None else acc + term
            MJstar[a][b] = -acc
    return MJ, MJp, MJstar


def structures_JJpJstar(sig: AmbientSignature):
    if not sig.admissible:
        raise NormalizationImpossible(f"{sig.name} is not an admissible geodesic space")
    chart = sig.chart()
    p, eps = sig.p, sig.eps
    sq_J = {0: -1, 3: -1}.get(p, -eps * (-1) ** p)
    sq_Jp = -eps
    sq_Jstar = (-1) ** p

    def make(idx, square, name):
        def components(xs):
            return _structure_matrices(sig, xs)[idx]

        return StructureField(chart, components, square, name=f"{name}_{sig.name}")

    return (
        make(0, sq_J, "J"),
        make(1, sq_Jp, "Jprime"),
        make(2, sq_Jstar, "Jstar"),
    )


def ambient_flat_metric(sig: AmbientSignature) -> MetricField:
    d = sig.diag

    def components(xs):
        return [[float(d[i]) if i == j else 0.0 for j in range(4)] for i in range(4)]

    return MetricField(Chart(f"R4_{sig.p}"), components, "riemannian" if sig.p == 0 else ("lorentz" if sig.p in (1, 3) else "neutral"), name=f"flat_p{sig.p}")


def tangent_bivectors(sig: AmbientSignature, u) -> np.ndarray:
    """Values of the four embedded tangent bivectors at u; rows t_k."""
    from .jets import seed_point

    xs = seed_point(np.asarray(u, dtype=float))
    _, ts = _embedding_data(sig, xs)
    return np.array([[float(c.value) if isinstance(c, Jet2) else float(c) for c in t] for t in ts])


def embedded_point(sig: AmbientSignature, u) -> np.ndarray:
    from .jets import seed_point

    xs = seed_point(np.asarray(u, dtype=float))
    B, _ = _embedding_data(sig, xs)
    return np.array([float(c.value) if isinstance(c, Jet2) else float(c) for c in B])


def decomposability_residual(sig: AmbientSignature, u) -> float:
    """|B ^ B| through the wedge pairing; zero on the Pluecker quadric."""
    from .tensor import PAIRING

    B = embedded_point(sig, u)
    return float(abs(B @ PAIRING @ B))


def hodge_restriction_residual(sig: AmbientSignature, points) -> float:
    """max |star(t_k) - sum_j (-Jstar)^j_k t_j| over chart points."""
    from .tensor import star_matrix

    star = star_matrix(sig.diag * np.eye(4))
    _, _, Jstar = structures_JJpJstar(sig)
    worst = 0.0
    for u in np.atleast_2d(points):
        ts = tangent_bivectors(sig, u)  # rows t_k
        M = Jstar.value(u)
        lhs = ts @ star.T               # rows star(t_k)
        rhs = -np.einsum("jk,ji->ki", M, ts)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def table1_verify(sig: AmbientSignature, points) -> dict:
    """Squared sign and isometry class of (J, J', Jstar) against the expected row."""
    from .structures import classify, isometry_sign

    g = metric_Gp(sig)
    Js = structures_JJpJstar(sig)
    expected = TABLE1[(sig.p, sig.eps)]
    row = {"space": sig.name, "entries": [], "match": True}
    for J, (exp_kind, exp_iso) in zip(Js, expected):
        sq_errs, iso_signs = [], set()
        for u in np.atleast_2d(points):
            v = J.value(u)
            g0 = g.value(u)
            sq = np.eye(4) if J.square > 0 else -np.eye(4)
            sq_errs.append(float(np.max(np.abs(v @ v - sq))))
            sign, _, _ = isometry_sign(g0, v)
            iso_signs.add(sign)
            if J.square > 0:
                classify(g0, v)  # cross-route consistency for paracomplex entries
        kind = "para" if J.square > 0 else "complex"
        iso = {1: "isometric", -1: "anti"}.get(iso_signs.pop() if len(iso_signs) == 1 else None, "neither")
        ok = kind == exp_kind and iso == exp_iso and max(sq_errs) < 1e-10
        row["entries"].append(
            {
                "structure": J.name.split("_")[0],
                "kind": kind,
                "isometry": iso,
                "square_residual": max(sq_errs),
                "expected": f"{exp_kind}/{exp_iso}",
                "ok": ok,
            }
        )
        row["match"] = row["match"] and ok
    return row


def metric_Gp_prime(sig: AmbientSignature) -> MetricField:
    from .structures import associated_metric

    g = metric_Gp(sig)
    _, _, Jstar = structures_JJpJstar(sig)
    return associated_metric(g, Jstar, name=f"Gprime_{sig.name}")
