"""The space of oriented lines of Euclidean 3-space.

Chart convention: (x0, x1, x2, x3) = (Re xi, Im xi, Re eta, Im eta), where xi
is the stereographic direction (projection from the south pole) and eta the
orthogonal displacement from the origin.

The neutral metric expands, with F = 4 / (1 + |xi|^2)^2 and
c = 2 conj(xi) eta / (1 + |xi|^2), to

    ds^2 = F * [ dx1 dx2 - dx0 dx3 + Im(c) (dx0^2 + dx1^2) ].

The conformal chart (Z1, Z2) carries the same geometry as
(1/4) (1 + |Z1 - Z2|^2 / 4)^(-1) (dX1^2 + dX2^2 - dX3^2 - dX4^2); the global
prefactor 1/4 is forced by the coordinate transformations below (verified by
pullback to 1e-9).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateLine, HorizontalLine, OutsideHemisphere, PoleOfChart
from .fields import Chart, MetricField, SmoothMap, StructureField
from .jets import ComplexJet, Jet2, abs2, complex_pair

XI_ETA_CHART = Chart("linespace-xi-eta", ("x0", "x1", "x2", "x3"))
CONFORMAL_CHART = Chart("linespace-conformal", ("X1", "X2", "X3", "X4"))


@dataclass(frozen=True)
class LinePoint:
    xi: complex
    eta: complex

    def coords(self) -> np.ndarray:
        return np.array([self.xi.real, self.xi.imag, self.eta.real, self.eta.imag])

    @staticmethod
    def from_coords(x) -> "LinePoint":
        x = np.asarray(x, dtype=float)
        return LinePoint(complex(x[0], x[1]), complex(x[2], x[3]))


@dataclass(frozen=True)
class ConformalPoint:
    Z1: complex
    Z2: complex

    def coords(self) -> np.ndarray:
        return np.array([self.Z1.real, self.Z1.imag, self.Z2.real, self.Z2.imag])

    @staticmethod
    def from_coords(X) -> "ConformalPoint":
        X = np.asarray(X, dtype=float)
        return ConformalPoint(complex(X[0], X[1]), complex(X[2], X[3]))


@dataclass(frozen=True)
class PlueckerSextet:
    p: np.ndarray
    q: np.ndarray


@dataclass(frozen=True)
class LineFrame:
    e0: np.ndarray       # real unit direction vector
    e_plus: np.ndarray   # complex null combination e1 + i e2
    e_minus: np.ndarray  # conjugate


# ---------------------------------------------------------------------------
# metric and structures
# ---------------------------------------------------------------------------

def _metric_entries(xs):
    xi, eta = complex_pair(xs)
    one = 1.0 + abs2(xi)
    F = 4.0 / (one * one)
    cI = (2.0 * xi.conj() * eta / one).im
    z = 0.0
    h = F * 0.5
    a = F * cI
    return [
        [a, z, z, -h],
        [z, a, h, z],
        [z, h, z, z],
        [-h, z, z, z],
    ]


def metric_G() -> MetricField:
    return MetricField(XI_ETA_CHART, _metric_entries, "neutral", name="linespace-G")


def _j1_coefficient(xs):
    xi, eta = complex_pair(xs)
    return 4.0 * xi.conj() * eta / (1.0 + abs2(xi))


J0_MATRIX = np.array(
    [
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
    ]
)


def _j0_entries(xs):
    return [[J0_MATRIX[a, b] for b in range(4)] for a in range(4)]


def _j1_entries(xs):
    c = _j1_coefficient(xs)
    z = 0.0
    return [
        [1.0, z, z, z],
        [z, 1.0, z, z],
        [c.re, -c.im, -1.0, z],
        [c.im, c.re, z, -1.0],
    ]


def _j2_entries(xs):
    j1 = _j1_entries(xs)
    out = [[None] * 4 for _ in range(4)]
    for a in range(4):
        for b in range(4):
            acc = None
            for m in range(4):
                if J0_MATRIX[a, m] == 0.0:
                    continue
                term = J0_MATRIX[a, m] * j1[m][b]
                acc = term if acc is None else acc + term
            out[a][b] = acc if acc is not None else 0.0
    return out


def structures_J012() -> tuple[StructureField, StructureField, StructureField]:
    j0 = StructureField(XI_ETA_CHART, _j0_entries, -1, name="J0")
    j1 = StructureField(XI_ETA_CHART, _j1_entries, +1, name="J1")
    j2 = StructureField(XI_ETA_CHART, _j2_entries, -1, name="J2")
    return j0, j1, j2


def metric_G_tilde() -> MetricField:
    """G~(.,.) = G(J2 ., .); symmetric and neutral since J2 is anti-isometric complex."""

    def components(xs):
        gm = _metric_entries(xs)
        jm = _j2_entries(xs)
        out = [[None] * 4 for _ in range(4)]
        for a in range(4):
            for b in range(4):
                acc = None
                for m in range(4):
                    term = gm[a][m] * jm[m][b]
                    acc = term if acc is None else acc + term
                out[a][b] = acc
        return out

    return MetricField(XI_ETA_CHART, components, "neutral", name="linespace-Gtilde")


def eta_rotation_map() -> SmoothMap:
    """(xi, eta) -> (xi, i eta); pulls G~ back to G."""

    def components(xs):
        x0, x1, x2, x3 = xs
        return [x0, x1, -x3, x2]

    return SmoothMap(XI_ETA_CHART, XI_ETA_CHART, components)


# ---------------------------------------------------------------------------
# the point map Phi and its frame
# ---------------------------------------------------------------------------

def phi(line: LinePoint, r: float) -> np.ndarray:
    """Point on the line at signed distance r from its closest point to the origin."""
    xi, eta = line.xi, line.eta
    one = 1.0 + abs(xi) ** 2
    z = 2.0 * (eta - xi**2 * np.conj(eta)) / one**2 + 2.0 * xi * r / one
    x3 = -2.0 * (np.conj(xi) * eta + xi * np.conj(eta)).real / one**2 + (1.0 - abs(xi) ** 2) * r / one
    return np.array([z.real, z.imag, float(x3)])


def line_frame(xi: complex) -> LineFrame:
    one = 1.0 + abs(xi) ** 2
    e0 = np.array([(2.0 * xi).real / one, (2.0 * xi).imag / one, (1.0 - abs(xi) ** 2) / one])
    s = np.sqrt(2.0) / one
    # (d/dz, d/dzbar, d/dx3) coefficients of e+, then to cartesian with
    # d/dz = (d/dx1 - i d/dx2)/2 and d/dzbar its conjugate
    a = s
    b = -s * np.conj(xi) ** 2
    c = -s * np.conj(xi)
    e_plus = np.array([(a + b) * 0.5, (b - a) * 0.5j, c], dtype=complex)
    e_minus = np.conj(e_plus)
    return LineFrame(e0, e_plus, e_minus)


def phi_pushforward(line: LinePoint, r: float) -> dict:
    """Closed-form frame decomposition of the Phi pushforwards.

    D Phi(d/deta) = sqrt(2)/(1+|xi|^2) e+
    D Phi(d/dxi)  = (r - 2 conj(xi) eta/(1+|xi|^2)) sqrt(2)/(1+|xi|^2) e+
                    - 2 conj(eta)/(1+|xi|^2)^2 e0
    """
    xi, eta = line.xi, line.eta
    one = 1.0 + abs(xi) ** 2
    frame = line_frame(xi)
    b_plus = np.sqrt(2.0) / one
    a_plus = (r - 2.0 * np.conj(xi) * eta / one) * np.sqrt(2.0) / one
    a_zero = -2.0 * np.conj(eta) / one**2
    return {
        "frame": frame,
        "dxi": {"e_plus": a_plus, "e0": a_zero, "e_minus": 0.0},
        "deta": {"e_plus": b_plus, "e0": 0.0, "e_minus": 0.0},
    }


def phi_wirtinger_jacobian(line: LinePoint, r: float) -> dict:
    """D Phi(d/dxi), D Phi(d/deta) as complex 3-vectors, from jets of phi."""
    from .jets import jet_apply

    x = line.coords()

    def comp(k):
        def f(*xs):
            xi, eta = complex_pair(xs)
            one = 1.0 + abs2(xi)
            z = 2.0 * (eta - xi * xi * eta.conj()) / (one * one) + (2.0 * r) * xi / one
            x3 = (-2.0 * (xi.conj() * eta + xi * eta.conj()) / (one * one)).re + r * (1.0 - abs2(xi)) / one
            return [z.re, z.im, x3][k]

        return f

    grads = np.array([jet_apply(comp(k), x).grad for k in range(3)])
    d_xi = 0.5 * (grads[:, 0] - 1j * grads[:, 1])
    d_eta = 0.5 * (grads[:, 2] - 1j * grads[:, 3])
    return {"dxi": d_xi, "deta": d_eta}


def decompose_in_frame(v: np.ndarray, frame: LineFrame) -> dict:
    """Coefficients of a complex 3-vector in (e0, e+, e-) via the complex-
    bilinear dot product.  The frame normalization has <e+, e-> = 1 (the
    displayed vectors are (e1 +- i e2)/sqrt(2) for unit e1, e2)."""
    dot = lambda a, b: complex(np.sum(a * b))
    cross = dot(frame.e_plus, frame.e_minus)
    return {
        "e0": dot(v, frame.e0),
        "e_plus": dot(v, frame.e_minus) / cross,
        "e_minus": dot(v, frame.e_plus) / cross,
    }


# ---------------------------------------------------------------------------
# reflection and coordinate routes
# ---------------------------------------------------------------------------

def reflect_line(line: LinePoint) -> LinePoint:
    """Reflection in the x3-axis: (xi, eta) -> (1/conj(xi), conj(eta)/conj(xi)^2)."""
    if abs(line.xi) < 1e-12:
        raise PoleOfChart("reflection of xi = 0 leaves the chart")
    cx = np.conj(line.xi)
    return LinePoint(complex(1.0 / cx), complex(np.conj(line.eta) / cx**2))


def to_conformal(line: LinePoint) -> ConformalPoint:
    xi, eta = line.xi, line.eta
    if abs(xi) >= 1.0:
        raise OutsideHemisphere("conformal chart needs |xi| < 1")
    den = 1.0 - xi**2 * np.conj(xi) ** 2
    A = eta + xi**2 * np.conj(eta)
    B = 1j * (1.0 + abs(xi) ** 2) * xi
    return ConformalPoint(complex(2.0 * (A - B) / den), complex(2.0 * (A + B) / den))


def from_conformal(cp: ConformalPoint) -> LinePoint:
    """Inverse of the conformal chart over |xi| < 1.

    Uses the branch 2 + sqrt(4 + |Z1 - Z2|^2): the printed 2 - sqrt branch
    inverts the opposite hemisphere.
    """
    Z1, Z2 = cp.Z1, cp.Z2
    dZ = Z1 - Z2
    den = 2.0 + np.sqrt(4.0 + abs(dZ) ** 2)
    xi = 1j * dZ / den
    eta = (Z1 + Z2) / den + dZ * (abs(Z1) ** 2 - abs(Z2) ** 2) / (2.0 * den**2)
    return LinePoint(complex(xi), complex(eta))


def conformal_metric() -> MetricField:
    """The line-space geometry in the conformal chart (prefactor 1/4, see module docstring)."""

    def components(xs):
        Z1, Z2 = complex_pair(xs)
        f = 0.25 / (1.0 + 0.25 * abs2(Z1 - Z2))
        z = 0.0
        return [[f, z, z, z], [z, f, z, z], [z, z, -f, z], [z, z, z, -f]]

    return MetricField(CONFORMAL_CHART, components, "neutral", name="linespace-conformal")


def conformal_transition() -> SmoothMap:
    """(xi, eta) chart -> conformal chart, as a jet-differentiable map."""

    def components(xs):
        xi, eta = complex_pair(xs)
        den = 1.0 - abs2(xi) * abs2(xi)
        A = eta + xi * xi * eta.conj()
        B = ComplexJet(Jet2.constant(0.0), Jet2.constant(1.0)) * (1.0 + abs2(xi)) * xi
        Z1 = 2.0 * (A - B) / den
        Z2 = 2.0 * (A + B) / den
        return [Z1.re, Z1.im, Z2.re, Z2.im]

    return SmoothMap(XI_ETA_CHART, CONFORMAL_CHART, components)


# ---------------------------------------------------------------------------
# Pluecker coordinates
# ---------------------------------------------------------------------------

def pluecker(s, t) -> PlueckerSextet:
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.linalg.norm(s - t) < 1e-12:
        raise DegenerateLine("the two points coincide")
    return PlueckerSextet(np.cross(s, t), s - t)


def conformal_from_pluecker(px: PlueckerSextet) -> np.ndarray:
    p, q = px.p, px.q
    if abs(q[2]) < 1e-12:
        raise HorizontalLine("q3 = 0: line direction is horizontal")
    return np.array(
        [
            (p[1] + q[1]) / q[2],
            (-p[0] - q[0]) / q[2],
            (p[1] - q[1]) / q[2],
            (-p[0] + q[0]) / q[2],
        ]
    )


def line_from_points(s, t) -> LinePoint:
    """Holomorphic coordinates of the oriented line through t toward s."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    q = s - t
    n = np.linalg.norm(q)
    if n < 1e-12:
        raise DegenerateLine("the two points coincide")
    d = q / n
    if d[2] <= -1.0 + 1e-12:
        raise PoleOfChart("direction at the south pole")
    xi = complex(d[0], d[1]) / (1.0 + d[2])
    z = complex(s[0], s[1])
    eta = 0.5 * (z - 2.0 * s[2] * xi - np.conj(z) * xi**2)
    return LinePoint(complex(xi), complex(eta))
