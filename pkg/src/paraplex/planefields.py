"""First-order invariants of definite 2-plane fields on Riemannian or
neutral 4-manifolds: adapted frames, the connection coefficients
Gamma_{mu nu alpha} = g(nabla_mu e_nu, e_alpha), the complex twist lambda,
complex divergence rho and complex shears sigma_+-, and the parallel
equivalence test for isometric paracomplex structures.

Frames are built by signed Gram-Schmidt from *programs*: the spanning
vectors must be jet-evaluable fields, since the invariants involve frame
derivatives.  When a plane field comes from a structure's eigenprojector,
the two projector columns used as a span are chosen at the evaluation point
and frozen, which yields a smooth local frame around that point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpan, IndefinitePlane
from .fields import MetricField, StructureField
from .jets import Jet2, seed_point, sqrt
from .tensor import christoffel_arrays

SQ2 = np.sqrt(2.0)


@dataclass(frozen=True)
class AdaptedFrame:
    vectors: np.ndarray   # rows e1, e2, e1hat, e2hat
    signs: tuple          # g(e, e) for each row


@dataclass(frozen=True)
class NPInvariants:
    lam: complex
    rho: complex
    sigma_plus: complex
    sigma_minus: complex
    lam_hat: complex
    rho_hat: complex
    sigma_plus_hat: complex
    sigma_minus_hat: complex

    def max_invariant(self) -> float:
        return max(
            abs(self.lam),
            abs(self.rho),
            abs(self.sigma_plus),
            abs(self.sigma_minus),
            abs(self.lam_hat),
            abs(self.rho_hat),
            abs(self.sigma_plus_hat),
            abs(self.sigma_minus_hat),
        )

    def leaf_gauss_curvature(self) -> float:
        """Gauss curvature of the integral surfaces in a flat ambient space.

        With rho and sigma defined through Gamma_{mu nu alpha} in the
        sqrt(2)-normalized null frame, the Gauss equation reads
        kappa = |rho|^2 / 2 - |sigma_+|^2 - |sigma_-|^2 (checked against the
        shape operator on round-sphere and cylinder leaves)."""
        return 0.5 * abs(self.rho) ** 2 - abs(self.sigma_plus) ** 2 - abs(self.sigma_minus) ** 2


def _mdot(g_entries, u, v):
    acc = None
    for a in range(4):
        for b in range(4):
            gab = g_entries[a][b]
            if isinstance(gab, float) and gab == 0.0:
                continue
            term = u[a] * gab * v[b]
            acc = term if acc is None else acc + term
    return acc


def _jet_value(x) -> float:
    return float(np.min(np.asarray(x.value if isinstance(x, Jet2) else x)))


def _gs_pair(g_entries, v1, v2, where: str):
    """Orthonormalize (v1, v2) with signs; plane must be definite."""
    n1 = _mdot(g_entries, v1, v1)
    s1 = float(np.sign(_jet_value(n1)))
    if abs(_jet_value(n1)) < 1e-10:
        raise IndefinitePlane(f"{where}: spanning vector is null")
    e1 = [c / sqrt(s1 * n1) for c in v1]
    c12 = _mdot(g_entries, v2, e1) * s1
    v2p = [v2[i] - c12 * e1[i] for i in range(4)]
    n2 = _mdot(g_entries, v2p, v2p)
    s2 = float(np.sign(_jet_value(n2)))
    if abs(_jet_value(n2)) < 1e-10:
        raise DegenerateSpan(f"{where}: spanning vectors are dependent or the plane is null")
    if s1 != s2:
        raise IndefinitePlane(f"{where}: induced metric is indefinite")
    e2 = [c / sqrt(s2 * n2) for c in v2p]
    return (e1, e2), s1


def _complement_span(g_value: np.ndarray, e1, e2, signs):
    """Two coordinate directions with the largest g-orthogonal projections."""
    proj = np.eye(4)
    vecs = np.array([[_jet_value(c) for c in e] for e in (e1, e2)])
    s = signs
    best = []
    for k in range(4):
        v = proj[k].copy()
        for e, sg in zip(vecs, (s, s)):
            v = v - sg * float(v @ g_value @ e) * e
        best.append((-float(abs(v @ g_value @ v)), k))
    best.sort()  # largest projection first; ties keep ascending axis order
    return best[0][1], best[1][1]


def frame_programs(g: MetricField, span_program, point):
    """Adapted frame as jets at ``point``: ((e1, e2, e1h, e2h), signs)."""
    p = np.asarray(point, dtype=float)
    xs = seed_point(p)
    g_entries = g.components(xs)
    v1, v2 = span_program(xs)
    (e1, e2), s_tan = _gs_pair(g_entries, v1, v2, "tangent plane")
    g_val = g.value(p)
    k1, k2 = _complement_span(g_val, e1, e2, s_tan)

    def project(v):
        out = list(v)
        for e in (e1, e2):
            c = _mdot(g_entries, out, e) * s_tan
            out = [out[i] - c * e[i] for i in range(4)]
        return out

    b1 = project([1.0 if i == k1 else 0.0 for i in range(4)])
    b2 = project([1.0 if i == k2 else 0.0 for i in range(4)])
    (h1, h2), s_nor = _gs_pair(g_entries, b1, b2, "normal plane")
    return (e1, e2, h1, h2), (s_tan, s_nor), g_entries


def adapted_frame(g: MetricField, span_program, point) -> AdaptedFrame:
    (e1, e2, h1, h2), (s_tan, s_nor), _ = frame_programs(g, span_program, point)
    rows = np.array([[_jet_value(c) for c in e] for e in (e1, e2, h1, h2)])
    return AdaptedFrame(rows, (s_tan, s_tan, s_nor, s_nor))


def np_invariants(g: MetricField, span_program, point) -> NPInvariants:
    p = np.asarray(point, dtype=float)
    frame, _, _ = frame_programs(g, span_program, p)
    g0, dg, _ = g.jets(p)
    _, Gamma, _ = christoffel_arrays(g0, dg)

    vals = np.array([[float(c.value) if isinstance(c, Jet2) else float(c) for c in e] for e in frame])
    grads = np.zeros((4, 4, 4))  # grads[n][k][l] = d_l e_n^k
    for n, e in enumerate(frame):
        for k, c in enumerate(e):
            if isinstance(c, Jet2):
                grads[n, k, :] = c.grad

    # nabla_{e_mu} e_nu then Gamma_{mu nu alpha} = g(nabla_mu e_nu, e_alpha)
    Greal = np.zeros((4, 4, 4))
    for mu in range(4):
        X = vals[mu]
        for nu in range(4):
            dY = grads[nu]
            cov = X @ dY.T + np.einsum("i,kij,j->k", X, Gamma, vals[nu])
            for al in range(4):
                Greal[mu, nu, al] = cov @ g0 @ vals[al]

    # orthonormality antisymmetry must hold before any invariant is trusted
    anti = np.max(np.abs(Greal + np.swapaxes(Greal, 1, 2)))
    if anti > 1e-10:
        raise DegenerateSpan(f"frame is not orthonormal to tolerance: {anti:.2e}")

    # complex frame coefficients over the real frame (e1, e2, e1h, e2h)
    ep = np.array([1, -1j, 0, 0]) / SQ2
    em = np.array([1, +1j, 0, 0]) / SQ2
    eph = np.array([0, 0, 1, -1j]) / SQ2
    emh = np.array([0, 0, 1, +1j]) / SQ2

    def G(a, b, c):
        return np.einsum("m,n,a,mna->", a, b, c, Greal)

    lam = G(ep, eph, em) - G(em, eph, ep)
    rho = G(ep, eph, em) + G(em, eph, ep)
    sp = G(ep, eph, ep)
    sm = G(em, eph, em)
    lam_h = G(eph, ep, emh) - G(emh, ep, eph)
    rho_h = G(eph, ep, emh) + G(emh, ep, eph)
    sph = G(eph, ep, eph)
    smh = G(emh, ep, emh)
    return NPInvariants(lam, rho, sp, sm, lam_h, rho_h, sph, smh)


def plane_from_structure(j: StructureField, sign: int = +1):
    """Spanning program for the +1 (or -1) eigenplane of a paracomplex field.

    The two projector columns are chosen by pivoted elimination of the
    projector *value* at each evaluation point, then reused as smooth
    programs through the jets.
    """

    def span(xs):
        m = j.components(xs)

        def val(e):
            return float(np.mean(np.asarray(e.value if isinstance(e, Jet2) else e)))

        pv = 0.5 * (np.eye(4) + sign * np.array([[val(m[a][b]) for b in range(4)] for a in range(4)]))
        # greedy column pivoting on the projector value matrix
        c1 = int(np.argmax(np.linalg.norm(pv, axis=0)))
        u = pv[:, c1] / np.linalg.norm(pv[:, c1])
        resid = pv - np.outer(u, u @ pv)
        c2 = int(np.argmax(np.linalg.norm(resid, axis=0)))
        half = 0.5 * float(sign)

        def column(c):
            return [0.5 * (1.0 if a == c else 0.0) + half * m[a][c] for a in range(4)]

        return column(c1), column(c2)

    return span


def parallel_equivalence_check(g: MetricField, j: StructureField, points) -> dict:
    """Vanishing of all first-order eigenplane invariants == parallel j."""
    from .structures import classify, parallel_residual

    pts = np.atleast_2d(np.asarray(points, dtype=float))
    worst = 0.0
    for p in pts:
        classify(g.value(p), j.value(p))
        for sign in (+1, -1):
            inv = np_invariants(g, plane_from_structure(j, sign), p)
            worst = max(worst, inv.max_invariant())
    par = parallel_residual(g, j, pts)
    both_zero = worst < 1e-8 and par < 1e-8
    both_nonzero = worst > 1e-3 and par > 1e-3
    return {
        "max_invariant": worst,
        "parallel_residual": par,
        "equivalent": both_zero or both_nonzero,
        "parallel": both_zero,
    }
