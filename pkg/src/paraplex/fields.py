"""Chart-based field types and their jet evaluation.

A field's ``components`` attribute is a program: it receives the four
coordinate jets of a chart point (possibly batched) and returns a nested
list of jets/constants.  Everything downstream (curvature, covariant
derivatives, Nijenhuis tensors) reads exact first and second derivatives out
of those jets.

Array index conventions used across the engine:

- ``g0[..., i, j]``            metric values
- ``dg[..., k, i, j]``         d_k g_ij
- ``d2g[..., m, k, i, j]``     d_m d_k g_ij
- ``j0[..., a, b]``            endomorphism j^a_b  (j(e_b) = j^a_b e_a)
- ``dj[..., l, a, b]``         d_l j^a_b
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import SingularMetric, TargetOutsideChart
from .jets import DIM, ComplexJet, Jet2, seed_point


@dataclass(frozen=True)
class Chart:
    """A named 4-dimensional coordinate chart."""

    name: str
    names: tuple[str, str, str, str] = ("x0", "x1", "x2", "x3")
    validity: Callable[[np.ndarray], bool] | None = None

    def contains(self, point) -> bool:
        if self.validity is None:
            return True
        return bool(self.validity(np.asarray(point, dtype=float)))


def _as_jet(entry, like: Jet2) -> Jet2:
    if isinstance(entry, ComplexJet):
        return entry.real_part_checked()
    if isinstance(entry, Jet2):
        return entry
    return Jet2.constant(np.broadcast_to(np.asarray(entry, dtype=float), like.value.shape).copy())


def _batched(points) -> tuple[np.ndarray, bool]:
    p = np.asarray(points, dtype=float)
    if p.ndim == 1:
        return p[None, :], True
    return p, False


def eval_matrix_program(program, points, shape=(DIM, DIM)):
    """Evaluate a matrix-valued jet program; returns (values, grads, hessians).

    values: (N, *shape); grads: (N, 4, *shape); hessians: (N, 4, 4, *shape).
    """
    pts, squeeze = _batched(points)
    xs = seed_point(pts)
    raw = program(xs)
    n = pts.shape[0]
    vals = np.zeros((n, *shape))
    grads = np.zeros((n, DIM, *shape))
    hesses = np.zeros((n, DIM, DIM, *shape))
    like = xs[0]
    for idx in np.ndindex(*shape):
        entry = raw
        for k in idx:
            entry = entry[k]
        j = _as_jet(entry, like)
        sl = (slice(None),) + idx
        vals[sl] = j.value
        grads[(slice(None), slice(None)) + idx] = np.broadcast_to(j.grad, (n, DIM))
        hesses[(slice(None), slice(None), slice(None)) + idx] = np.broadcast_to(j.hess, (n, DIM, DIM))
    if squeeze:
        return vals[0], grads[0], hesses[0]
    return vals, grads, hesses


@dataclass(frozen=True)
class MetricField:
    """Symmetric nondegenerate 4x4 metric program on a chart."""

    chart: Chart
    components: Callable
    signature: str
    orientation: float = 1.0
    name: str = ""

    def value(self, point) -> np.ndarray:
        g0, _, _ = self.jets(point)
        return g0

    def jets(self, points):
        """(g0, dg, d2g) with the module-level index layout."""
        vals, grads, hesses = eval_matrix_program(self.components, points)
        # reorder: eval gives grads[..., k, i, j] already (derivative axes first)
        return vals, grads, hesses

    def check_nondegenerate(self, g0: np.ndarray) -> None:
        det = np.linalg.det(g0)
        if np.any(np.abs(det) <= 1e-10):
            raise SingularMetric("|det g| <= 1e-10 at an evaluated point")

    def signature_counts(self, point) -> tuple[int, int]:
        g0 = self.value(point)
        if g0.ndim == 3:
            g0 = g0[0]
        ev = np.linalg.eigvalsh(g0)
        return int(np.sum(ev > 0)), int(np.sum(ev < 0))


@dataclass(frozen=True)
class StructureField:
    """Endomorphism field j^a_b with an intended square of +1 or -1."""

    chart: Chart
    components: Callable
    square: int  # +1 paracomplex candidate, -1 complex candidate
    name: str = ""

    def value(self, point) -> np.ndarray:
        j0, _ = self.jets(point)
        return j0

    def jets(self, points):
        vals, grads, _ = eval_matrix_program(self.components, points)
        return vals, grads


@dataclass(frozen=True)
class SmoothMap:
    """Differentiable map between 4-charts, with jet-level pushforwards."""

    source: Chart
    target: Chart
    components: Callable
    target_validity: Callable[[np.ndarray], bool] | None = None

    def value(self, point) -> np.ndarray:
        vals, _ = self.jets(point)
        return vals

    def jets(self, points):
        """(values (..., 4), jacobian (..., a, mu) = d_mu phi^a)."""
        pts, squeeze = _batched(points)
        xs = seed_point(pts)
        raw = self.components(xs)
        n = pts.shape[0]
        vals = np.zeros((n, DIM))
        jac = np.zeros((n, DIM, DIM))
        for a in range(DIM):
            j = _as_jet(raw[a], xs[0])
            vals[:, a] = j.value
            jac[:, a, :] = np.broadcast_to(j.grad, (n, DIM))
        if self.target_validity is not None:
            for row in vals:
                if not self.target_validity(row):
                    raise TargetOutsideChart("map image leaves the target chart")
        if squeeze:
            return vals[0], jac[0]
        return vals, jac


def constant_structure(chart: Chart, matrix: np.ndarray, square: int, name: str = "") -> StructureField:
    m = np.asarray(matrix, dtype=float)

    def components(xs):
        return [[m[a, b] for b in range(DIM)] for a in range(DIM)]

    return StructureField(chart, components, square, name=name)


def real_endomorphism_from_blocks(P, Q):
    """Real 4x4 endomorphism (as nested jets) from complex block data.

    The complexified chart basis is (d/dZ1, d/dZ2) with the real chart
    (x0, x1, x2, x3) = (Re Z1, Im Z1, Re Z2, Im Z2).  ``P[l][k]`` is the
    d/dZ_l coefficient and ``Q[l][k]`` the d/dZbar_l coefficient of the image
    of d/dZ_k; reality of the endomorphism fixes the conjugate half.
    """
    out = [[None] * DIM for _ in range(DIM)]
    for l in range(2):
        for k in range(2):
            p = ComplexJet._lift(P[l][k])
            q = ComplexJet._lift(Q[l][k])
            r, c = 2 * l, 2 * k
            out[r][c] = p.re + q.re
            out[r][c + 1] = (-p.im) + (-q.im)
            out[r + 1][c] = p.im + (-q.im)
            out[r + 1][c + 1] = p.re + (-q.re)
    return out


def metric_product_structure(g: MetricField, j: StructureField):
    """Jet program for g'(.,.) = g(j.,.) i.e. components g_{a m} j^m_b."""

    def components(xs):
        gm = g.components(xs)
        jm = j.components(xs)
        out = [[None] * DIM for _ in range(DIM)]
        for a in range(DIM):
            for b in range(DIM):
                acc = None
                for m in range(DIM):
                    term = gm[a][m] * jm[m][b]
                    acc = term if acc is None else acc + term
                out[a][b] = acc
        return out

    return components

