"""Chart tensor calculus: Christoffel symbols, curvature, Weyl splitting,
Hodge star on bivectors, covariant derivatives of endomorphisms, Nijenhuis
tensors and metric pullbacks.

Curvature convention (anchored by S = +4 on the product of unit round
spheres):

    R^l_{ijk} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
                + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}
    Riem_{ijkl} = g_{km} R^m_{ijl}          (antisymmetric pairs (ij), (kl);
                                             unit spheres have R_{1212} > 0)
    Ric_{jl} = g^{ik} Riem_{ijkl} = R^i_{ijl},   S = g^{jk} Ric_{jk}

The Weyl tensor uses the dimension-4 Kulkarni-Nomizu decomposition with the
traceless Ricci part E = Ric - (S/4) g.  All norms are full metric
contractions and may be negative in neutral signature.

The bivector basis for everything on Lambda^2 is, in order,
e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4 (0-based pairs in ``PAIRS``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularMetric, UnsupportedSignature
from .fields import MetricField, SmoothMap, StructureField

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _perm_sign(idx):
    s = 1
    idx = list(idx)
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                s = -s
    return s


def _pairing_matrix() -> np.ndarray:
    E = np.zeros((6, 6))
    for I, (i, j) in enumerate(PAIRS):
        for J, (k, l) in enumerate(PAIRS):
            if len({i, j, k, l}) == 4:
                E[I, J] = _perm_sign((i, j, k, l))
    return E


PAIRING = _pairing_matrix()


# ---------------------------------------------------------------------------
# batched core
# ---------------------------------------------------------------------------

def _check_det(g0: np.ndarray) -> np.ndarray:
    det = np.linalg.det(g0)
    if np.any(np.abs(det) <= 1e-10):
        raise SingularMetric("|det g| <= 1e-10")
    return det


def christoffel_arrays(g0, dg, d2g=None):
    """Gamma (and dGamma when second derivatives are supplied)."""
    _check_det(g0)
    ginv = np.linalg.inv(g0)
    # T[l, i, j] = d_i g_lj + d_j g_li - d_l g_ij
    T = np.einsum("...ilj->...lij", dg) + np.einsum("...jli->...lij", dg) - dg
    Gamma = 0.5 * np.einsum("...kl,...lij->...kij", ginv, T)
    if d2g is None:
        return ginv, Gamma, None
    dginv = -np.einsum("...ka,...mab,...bl->...mkl", ginv, dg, ginv)
    dT = (
        np.einsum("...milj->...mlij", d2g)
        + np.einsum("...mjli->...mlij", d2g)
        - np.einsum("...mlij->...mlij", d2g)
    )
    dGamma = 0.5 * np.einsum("...mkl,...lij->...mkij", dginv, T) + 0.5 * np.einsum(
        "...kl,...mlij->...mkij", ginv, dT
    )
    return ginv, Gamma, dGamma


def riemann_up(Gamma, dGamma):
    """R^l_{ijk} indexed [..., l, i, j, k]."""
    dG = np.einsum("...iljk->...lijk", dGamma)
    GG = np.einsum("...lim,...mjk->...lijk", Gamma, Gamma)
    R = dG + GG
    return R - np.einsum("...lijk->...ljik", R)


def kulkarni_nomizu(A, B):
    return (
        np.einsum("...ik,...jl->...ijkl", A, B)
        - np.einsum("...il,...jk->...ijkl", A, B)
        + np.einsum("...jl,...ik->...ijkl", A, B)
        - np.einsum("...jk,...il->...ijkl", A, B)
    )


def raise_all(T, ginv):
    T = np.einsum("...ijkl,...ia->...ajkl", T, ginv)
    T = np.einsum("...ajkl,...jb->...abkl", T, ginv)
    T = np.einsum("...abkl,...kc->...abcl", T, ginv)
    return np.einsum("...abcl,...ld->...abcd", T, ginv)


def full_norm4(T, ginv):
    return np.einsum("...ijkl,...ijkl->...", T, raise_all(T, ginv))


def norm2(A, ginv):
    Ash = np.einsum("...ia,...ab,...bj->...ij", ginv, A, ginv)
    return np.einsum("...ij,...ij->...", A, Ash)


def lambda2_metric(g0):
    """<<,>> on bivectors: Q[I,J] = g_ik g_jl - g_il g_jk in the pair basis."""
    batch = g0.shape[:-2]
    Q = np.zeros(batch + (6, 6))
    for I, (i, j) in enumerate(PAIRS):
        for J, (k, l) in enumerate(PAIRS):
            Q[..., I, J] = g0[..., i, k] * g0[..., j, l] - g0[..., i, l] * g0[..., j, k]
    return Q


def star_matrix(g0, orientation: float = 1.0):
    """Hodge star on bivectors, in the coordinate pair basis."""
    det = _check_det(g0)
    Q = lambda2_metric(g0)
    s = orientation / np.sqrt(np.abs(det))
    return np.einsum("IJ,...JK->...IK", PAIRING, Q) * s[..., None, None]


def tensor_to_pair(W):
    batch = W.shape[:-4]
    W6 = np.zeros(batch + (6, 6))
    for I, (i, j) in enumerate(PAIRS):
        for J, (k, l) in enumerate(PAIRS):
            W6[..., I, J] = W[..., i, j, k, l]
    return W6


def pair_to_tensor(W6):
    batch = W6.shape[:-2]
    W = np.zeros(batch + (4, 4, 4, 4))
    for I, (i, j) in enumerate(PAIRS):
        for J, (k, l) in enumerate(PAIRS):
            w = W6[..., I, J]
            W[..., i, j, k, l] = w
            W[..., j, i, k, l] = -w
            W[..., i, j, l, k] = -w
            W[..., j, i, l, k] = w
    return W


def curvature_arrays(g0, dg, d2g, *, orientation: float = 1.0, need_pm: bool = False, signature: str | None = None):
    """All curvature data, batched.  Returns a dict of arrays."""
    ginv, Gamma, dGamma = christoffel_arrays(g0, dg, d2g)
    Rup = riemann_up(Gamma, dGamma)
    Riem = np.einsum("...km,...mijl->...ijkl", g0, Rup)
    Ricci = np.einsum("...iijk->...jk", Rup)
    S = np.einsum("...jk,...jk->...", ginv, Ricci)
    E = Ricci - (S[..., None, None] / 4.0) * g0
    W = Riem - 0.5 * kulkarni_nomizu(E, g0) - (S[..., None, None, None, None] / 24.0) * kulkarni_nomizu(g0, g0)
    out = {
        "ginv": ginv,
        "Gamma": Gamma,
        "Riem": Riem,
        "Ricci": Ricci,
        "S": S,
        "E": E,
        "W": W,
        "riem2": full_norm4(Riem, ginv),
        "w2": full_norm4(W, ginv),
        "ric2": norm2(Ricci, ginv),
        "ein2": norm2(E, ginv),
        "sqrtdet": np.sqrt(np.abs(np.linalg.det(g0))),
    }
    if need_pm:
        if signature == "lorentz":
            raise UnsupportedSignature("self-dual split undefined for lorentz signature")
        star = star_matrix(g0, orientation)
        eye = np.broadcast_to(np.eye(6), star.shape)
        Pp = 0.5 * (eye + star)
        Pm = 0.5 * (eye - star)
        W6 = tensor_to_pair(W)
        Wp6 = np.einsum("...AI,...AB,...BJ->...IJ", Pp, W6, Pp)
        Wm6 = np.einsum("...AI,...AB,...BJ->...IJ", Pm, W6, Pm)
        out["wp2"] = full_norm4(pair_to_tensor(Wp6), ginv)
        out["wm2"] = full_norm4(pair_to_tensor(Wm6), ginv)
    return out


# ---------------------------------------------------------------------------
# pointwise operations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurvaturePackage:
    christoffel: np.ndarray     # Gamma[k, i, j]
    riemann: np.ndarray         # Riem[i, j, k, l], lowered
    ricci: np.ndarray
    scalar: float
    einstein: np.ndarray        # traceless Ricci
    weyl: np.ndarray
    norms: dict


def christoffels(g: MetricField, point) -> np.ndarray:
    g0, dg, _ = g.jets(point)
    _, Gamma, _ = christoffel_arrays(g0, dg)
    return Gamma


def curvature(g: MetricField, point, *, need_pm: bool | None = None) -> CurvaturePackage:
    g0, dg, d2g = g.jets(point)
    if need_pm is None:
        need_pm = g.signature in ("riemannian", "neutral")
    data = curvature_arrays(
        g0, dg, d2g, orientation=g.orientation, need_pm=need_pm, signature=g.signature
    )
    norms = {k: float(data[k]) for k in ("riem2", "w2", "ric2", "ein2") if np.ndim(data[k]) == 0}
    if np.ndim(data["S"]) > 0:
        raise ValueError("curvature() is pointwise; use curvature_arrays for batches")
    if need_pm:
        norms["wp2"] = float(data["wp2"])
        norms["wm2"] = float(data["wm2"])
    return CurvaturePackage(
        christoffel=data["Gamma"],
        riemann=data["Riem"],
        ricci=data["Ricci"],
        scalar=float(data["S"]),
        einstein=data["E"],
        weyl=data["W"],
        norms=norms,
    )


def hodge_star(g: MetricField, point) -> np.ndarray:
    g0 = g.value(point)
    return star_matrix(g0, g.orientation)


def weyl_pm_norms(g: MetricField, point) -> tuple[float, float]:
    if g.signature == "lorentz":
        raise UnsupportedSignature("weyl_pm_norms needs riemannian or neutral signature")
    g0, dg, d2g = g.jets(point)
    data = curvature_arrays(g0, dg, d2g, orientation=g.orientation, need_pm=True, signature=g.signature)
    return float(data["wp2"]), float(data["wm2"])


def covariant_derivative_endomorphism(g: MetricField, j: StructureField, point) -> np.ndarray:
    """nabla_l j^n_m = d_l j^n_m - j^n_k Gamma^k_{ml} + j^k_m Gamma^n_{kl};
    returned as D[..., l, n, m]."""
    g0, dg, _ = g.jets(point)
    _, Gamma, _ = christoffel_arrays(g0, dg)
    j0, dj = j.jets(point)
    D = (
        dj
        - np.einsum("...nk,...kml->...lnm", j0, Gamma)
        + np.einsum("...km,...nkl->...lnm", j0, Gamma)
    )
    return D


def nijenhuis(j: StructureField, point) -> np.ndarray:
    """N^k_{ij} from the first-derivative formula; returned as N[..., k, i, j]."""
    j0, dj = j.jets(point)
    t1 = np.einsum("...li,...lkj->...kij", j0, dj)
    t2 = np.einsum("...lj,...lki->...kij", j0, dj)
    t3 = np.einsum("...kl,...ilj->...kij", j0, dj) - np.einsum("...kl,...jli->...kij", j0, dj)
    return t1 - t2 - t3


def pullback_metric(phi: SmoothMap, g: MetricField, point) -> np.ndarray:
    vals, jac = phi.jets(point)
    gt = g.value(vals)
    return np.einsum("...am,...bn,...ab->...mn", jac, jac, gt)


def scalar_invariants(g: MetricField, points, *, need_pm: bool = False) -> dict:
    """Batched scalar curvature invariants at an (N, 4) array of points."""
    g0, dg, d2g = g.jets(points)
    data = curvature_arrays(g0, dg, d2g, orientation=g.orientation, need_pm=need_pm, signature=g.signature)
    keys = ["S", "ric2", "ein2", "w2", "riem2", "sqrtdet"]
    if need_pm:
        keys += ["wp2", "wm2"]
    return {k: np.atleast_1d(data[k]) for k in keys}
