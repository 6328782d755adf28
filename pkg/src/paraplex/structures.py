"""Construction and classification of almost (para)complex structures.

Classification runs two independent routes and cross-checks them:
eigenplane pairings of g against the +1/-1 eigenspaces, and the direct
residuals |g(j.,j.) - g| and |g(j.,j.) + g|.  Tolerance ladder: algebraic
identities at 1e-8, differential residuals at 1e-9, with "nonzero" meaning
> 1e-3, so no classification is ever ambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotIsometric, NotParacomplex
from .fields import MetricField, StructureField, metric_product_structure
from .tensor import covariant_derivative_endomorphism

ALG_TOL = 1e-8


@dataclass(frozen=True)
class EigenplanePair:
    p_plus: np.ndarray   # (2, 4) rows span the +1 eigenplane
    p_minus: np.ndarray  # (2, 4)


@dataclass(frozen=True)
class StructureClassification:
    kind: str                 # isometric | anti_isometric | neither
    eigenplane_geometry: str  # orthogonal | totally_null | generic
    residuals: dict


def eigenplanes(j_value: np.ndarray, tol: float = ALG_TOL) -> EigenplanePair:
    j = np.asarray(j_value, dtype=float)
    if np.max(np.abs(j @ j - np.eye(4))) > tol:
        raise NotParacomplex("j^2 != identity")
    if abs(np.trace(j)) > 1e-6:
        raise NotParacomplex("trace(j) != 0")
    planes = []
    for sign in (+1.0, -1.0):
        proj = 0.5 * (np.eye(4) + sign * j)
        # rank-revealing orthonormal basis of the column space
        u, s, _ = np.linalg.svd(proj)
        if s[1] < 0.5 or s[2] > 1e-6:
            raise NotParacomplex(f"{'+' if sign > 0 else '-'}1 eigenspace rank != 2")
        planes.append(u[:, :2].T.copy())
    return EigenplanePair(planes[0], planes[1])


def isometry_sign(g_value: np.ndarray, j_value: np.ndarray, tol: float = ALG_TOL):
    """+1 if g(j.,j.) = g, -1 if = -g, else None.  Valid for any j."""
    g = np.asarray(g_value, dtype=float)
    j = np.asarray(j_value, dtype=float)
    pulled = j.T @ g @ j
    scale = max(1.0, float(np.max(np.abs(g))))
    r_iso = float(np.max(np.abs(pulled - g))) / scale
    r_anti = float(np.max(np.abs(pulled + g))) / scale
    if r_iso < tol:
        return 1, r_iso, r_anti
    if r_anti < tol:
        return -1, r_iso, r_anti
    return None, r_iso, r_anti


def classify(g_value: np.ndarray, j_value: np.ndarray, tol: float = ALG_TOL) -> StructureClassification:
    planes = eigenplanes(j_value, tol)
    g = np.asarray(g_value, dtype=float)
    scale = max(1.0, float(np.max(np.abs(g))))
    cross = planes.p_plus @ g @ planes.p_minus.T          # 4 pairings P+ x P-
    gp = planes.p_plus @ g @ planes.p_plus.T              # within-plane products
    gm = planes.p_minus @ g @ planes.p_minus.T
    r_orth = float(np.max(np.abs(cross))) / scale
    r_null = float(max(np.max(np.abs(gp)), np.max(np.abs(gm)))) / scale
    sign, r_iso, r_anti = isometry_sign(g, j_value, tol)

    if r_orth < tol:
        geometry = "orthogonal"
    elif r_null < tol:
        geometry = "totally_null"
    else:
        geometry = "generic"

    if sign == 1:
        kind = "isometric"
    elif sign == -1:
        kind = "anti_isometric"
    else:
        kind = "neither"

    # the two routes must agree
    if (kind == "isometric") != (geometry == "orthogonal") or (
        kind == "anti_isometric"
    ) != (geometry == "totally_null"):
        raise NotParacomplex(
            f"classification routes disagree: kind={kind}, eigenplanes={geometry}, "
            f"residuals iso={r_iso:.3e} anti={r_anti:.3e} orth={r_orth:.3e} null={r_null:.3e}"
        )
    return StructureClassification(
        kind,
        geometry,
        {"iso": r_iso, "anti": r_anti, "orthogonal": r_orth, "null": r_null},
    )


def associated_metric(g: MetricField, j: StructureField, *, name: str = "") -> MetricField:
    """g'(.,.) = g(j.,.), a neutral metric when j is isometric.

    Raises NotIsometric otherwise.  (Non-isometric j still gives symmetric
    output in some cases, e.g. anti-isometric complex structures, so the
    isometry of j is checked directly alongside symmetry.)
    """

    base = metric_product_structure(g, j)

    def _values(jm, batch):
        from .jets import Jet2

        out = np.zeros(batch + (4, 4))
        for a in range(4):
            for b in range(4):
                e = jm[a][b]
                out[..., a, b] = e.value if isinstance(e, Jet2) else float(e)
        return out

    def components(xs):
        batch = np.shape(xs[0].value)
        gm = g.components(xs)
        jm = j.components(xs)
        gv, jv = _values(gm, batch), _values(jm, batch)
        pulled = np.einsum("...ma,...mn,...nb->...ab", jv, gv, jv)
        scale = max(1.0, float(np.max(np.abs(gv))))
        if float(np.max(np.abs(pulled - gv))) / scale > ALG_TOL:
            raise NotIsometric("j is not isometric for g; g(j.,.) is not the associated metric")
        m = base(xs)
        for a in range(4):
            for b in range(a + 1, 4):
                d = m[a][b] - m[b][a]
                dv = d.value if hasattr(d, "value") else np.asarray(d, dtype=float)
                if float(np.max(np.abs(dv), initial=0.0)) > 1e-9:
                    raise NotIsometric("g(j.,.) is not symmetric; j is not isometric for g")
        return m

    return MetricField(g.chart, components, "neutral", orientation=g.orientation, name=name or f"assoc({g.name})")


def two_form_values(g: MetricField, j: StructureField, points):
    """omega_{ab} = g_{am} j^m_b and its exterior derivative (batched).

    Returns (omega, domega) with domega[..., c, a, b] fully antisymmetrized:
    (d omega)_{cab} = d_c w_ab + d_a w_bc + d_b w_ca.
    """
    from .fields import eval_matrix_program

    prog = metric_product_structure(g, j)
    vals, grads, _ = eval_matrix_program(prog, points)
    dw = grads  # [..., c, a, b] = d_c w_ab
    dom = dw + np.einsum("...abc->...cab", dw) + np.einsum("...bca->...cab", dw)
    return vals, dom


def parallel_residual(g: MetricField, j: StructureField, points) -> float:
    """Max-abs component of nabla j over the sample points.

    A metric contraction is deliberately not used: for indefinite g it can
    vanish on a nonzero tensor, which would defeat the parallel / nonparallel
    three-order separation.
    """
    D = covariant_derivative_endomorphism(g, j, points)
    return float(np.max(np.abs(D)))
