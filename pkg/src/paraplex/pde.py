"""Residual evaluators for the parallel-structure PDE systems on conformally
flat neutral charts g = Omega^2 (dZ1 dZb1 - dZ2 dZb2).

Chart convention: (x0, x1, x2, x3) = (Re Z1, Im Z1, Re Z2, Im Z2), with
Wirtinger operators d1 = (dx0 - i dx1)/2, d1b = (dx0 + i dx1)/2 and likewise
for Z2.  Data (conformal factors, angles, graph coefficients) enter as jet
programs; the residuals are plain complex numbers per equation.

The polar system is the exact phase recombination of the complex system; its
eighth equation carries (a^2 - b^2 - 1), as recombination of the last two
complex equations requires.
"""

from __future__ import annotations

import numpy as np

from .errors import CoincidentPlanes, DegenerateStructure, PolarDegeneracy
from .fields import Chart, MetricField, StructureField, real_endomorphism_from_blocks
from .jets import ComplexJet, abs2, exp, imaginary_unit, seed_point
from .linalg import ring_inverse

Z_CHART = Chart("conformal-neutral", ("X1", "X2", "X3", "X4"))


def _as_cjet(v) -> ComplexJet:
    return ComplexJet._lift(v)


def metric_from_omega(omega_program, name: str = "conformal-neutral") -> MetricField:
    """Omega^2 diag(1, 1, -1, -1) on the (Z1, Z2) chart."""

    def components(xs):
        om = _as_cjet(omega_program(xs)).real_part_checked()
        f = om * om
        z = 0.0
        return [[f, z, z, z], [z, f, z, z], [z, z, -f, z], [z, z, z, -f]]

    return MetricField(Z_CHART, components, "neutral", name=name)


def wirtinger(f: ComplexJet) -> dict:
    """First Wirtinger derivatives of a complex jet: d1, d1b, d2, d2b."""
    g = f.re.grad + 1j * f.im.grad
    return {
        "d1": 0.5 * (g[0] - 1j * g[1]),
        "d1b": 0.5 * (g[0] + 1j * g[1]),
        "d2": 0.5 * (g[2] - 1j * g[3]),
        "d2b": 0.5 * (g[2] + 1j * g[3]),
    }


def ultrahyperbolic_residual(omega_program, point) -> float:
    """|(d1 d1b - d2 d2b) Omega| at a chart point."""
    xs = seed_point(np.asarray(point, dtype=float))
    om = _as_cjet(omega_program(xs))
    h = om.re.hess + 1j * om.im.hess
    val = 0.25 * ((h[0, 0] + h[1, 1]) - (h[2, 2] + h[3, 3]))
    return float(abs(val))


# ---------------------------------------------------------------------------
# totally-null (alpha/beta) structures
# ---------------------------------------------------------------------------

def _phase_pair(phi1_program, phi2_program, xs):
    i = imaginary_unit()
    e1 = exp(i * _as_cjet(phi1_program(xs)))
    e2 = exp(i * _as_cjet(phi2_program(xs)))
    D = e1 - e2
    mod = np.sqrt(float(np.min(D.re.value**2 + D.im.value**2)))
    if mod < 1e-8:
        raise CoincidentPlanes("e^{i phi1} = e^{i phi2}: the null planes coincide")
    return e1, e2, D


def alpha_structure(phi1_program, phi2_program) -> StructureField:
    """Paracomplex structure with two alpha-plane eigendistributions."""

    def components(xs):
        e1, e2, D = _phase_pair(phi1_program, phi2_program, xs)
        P = [
            [1.0 - 2.0 * e1 / D, 2.0 / D],
            [(1.0 - (e1 + e2) / D) * e1, (e1 + e2) / D],
        ]
        Q = [[0.0, 0.0], [0.0, 0.0]]
        return real_endomorphism_from_blocks(P, Q)

    return StructureField(Z_CHART, components, +1, name="alpha-structure")


def beta_structure(phi1_program, phi2_program) -> StructureField:
    """Paracomplex structure with two beta-plane eigendistributions."""

    def components(xs):
        e1, e2, D = _phase_pair(phi1_program, phi2_program, xs)
        a11 = 1.0 - 2.0 * e1 / D
        q21 = (1.0 - (e1 + e2) / D) * e1
        p22 = ((e1 + e2) / D).conj()
        q12 = (2.0 / D).conj()
        P = [[a11, 0.0], [0.0, p22]]
        Q = [[0.0, q12], [q21, 0.0]]
        return real_endomorphism_from_blocks(P, Q)

    return StructureField(Z_CHART, components, +1, name="beta-structure")


def _system_data(omega_program, programs, point):
    xs = seed_point(np.asarray(point, dtype=float))
    om = _as_cjet(omega_program(xs))
    dom = wirtinger(om)
    out = {"Omega": complex(om.cvalue), "dOmega": dom}
    for name, prog in programs.items():
        f = _as_cjet(prog(xs))
        out[name] = complex(f.cvalue)
        out["d" + name] = wirtinger(f)
    return out


def alpha_parallel_residual(omega_program, phi1_program, phi2_program, point):
    """Residual moduli of the four alpha-plane parallel conditions."""
    xs = seed_point(np.asarray(point, dtype=float))
    _phase_pair(phi1_program, phi2_program, xs)  # transversality guard
    i = imaginary_unit()
    om = _as_cjet(omega_program(xs))
    dom = wirtinger(om)
    res = []
    for prog in (phi1_program, phi2_program):
        F = om * exp(-(i * _as_cjet(prog(xs))))
        dF = wirtinger(F)
        res.append(abs(dF["d1"] + dom["d2"]))
        res.append(abs(dF["d2b"] + dom["d1b"]))
    return max(res), res


def beta_parallel_residual(omega_program, phi1_program, phi2_program, point):
    xs = seed_point(np.asarray(point, dtype=float))
    _phase_pair(phi1_program, phi2_program, xs)
    i = imaginary_unit()
    om = _as_cjet(omega_program(xs))
    dom = wirtinger(om)
    res = []
    for prog in (phi1_program, phi2_program):
        F = om * exp(-(i * _as_cjet(prog(xs))))
        dF = wirtinger(F)
        res.append(abs(dF["d1"] + dom["d2b"]))
        res.append(abs(dF["d2"] + dom["d1b"]))
    return max(res), res


# ---------------------------------------------------------------------------
# isometric (graph) structures
# ---------------------------------------------------------------------------

def _deltas(alpha: ComplexJet, beta: ComplexJet):
    d1 = abs2(alpha) - abs2(beta)
    if float(np.min(np.abs(d1.value))) < 1e-8:
        raise DegenerateStructure("Delta1 = |alpha|^2 - |beta|^2 underflow")
    inv = 1.0 / d1
    one = 1.0
    d2 = abs2(alpha) * (one - inv) * (one - inv) - abs2(beta) * (one + inv) * (one + inv)
    if float(np.min(np.abs(d2.value))) < 1e-8:
        raise DegenerateStructure("Delta2 underflow")
    return d1, d2


def isometric_structure(alpha_program, beta_program) -> StructureField:
    """j with +1 eigenplane the graph Z2 = alpha w + beta conj(w) over Z1 and
    -1 eigenplane its g-orthogonal complement."""

    def components(xs):
        al = _as_cjet(alpha_program(xs))
        be = _as_cjet(beta_program(xs))
        d1, _ = _deltas(al, be)
        inv = 1.0 / d1
        one, zero = 1.0, 0.0
        # columns v, vbar, w, wbar in the complexified basis (Z1, Zb1, Z2, Zb2)
        B = [
            [one, zero, one, zero],
            [zero, one, zero, one],
            [al, be.conj(), al * inv, -(be.conj() * inv)],
            [be, al.conj(), -(be * inv), al.conj() * inv],
        ]
        Binv = ring_inverse(B)
        diag = (1.0, 1.0, -1.0, -1.0)
        jc = [[None] * 4 for _ in range(4)]
        for r in range(4):
            for c in range(4):
                acc = None
                for m in range(4):
                    term = B[r][m] * (diag[m] * Binv[m][c])
                    acc = term if acc is None else acc + term
                jc[r][c] = acc
        P = [[jc[0][0], jc[0][2]], [jc[2][0], jc[2][2]]]
        Q = [[jc[1][0], jc[1][2]], [jc[3][0], jc[3][2]]]
        return real_endomorphism_from_blocks(P, Q)

    return StructureField(Z_CHART, components, +1, name="isometric-graph-structure")


def isometric_parallel_residual(omega_program, alpha_program, beta_program, point):
    """Residual moduli of the eight graph-coefficient parallel conditions."""
    data = _system_data(omega_program, {"alpha": alpha_program, "beta": beta_program}, point)
    xs = seed_point(np.asarray(point, dtype=float))
    _deltas(_as_cjet(alpha_program(xs)), _as_cjet(beta_program(xs)))
    om, dom = data["Omega"], data["dOmega"]
    al, da = data["alpha"], data["dalpha"]
    be, db = data["beta"], data["dbeta"]
    alc, bec = np.conj(al), np.conj(be)
    # Wirtinger derivatives of the conjugated functions
    dac = {k: np.conj(da[{"d1": "d1b", "d1b": "d1", "d2": "d2b", "d2b": "d2"}[k]]) for k in da}
    dbc = {k: np.conj(db[{"d1": "d1b", "d1b": "d1", "d2": "d2b", "d2b": "d2"}[k]]) for k in db}
    eqs = [
        om * da["d1"] - al * dom["d1"] - al * (al * dom["d2"] + bec * dom["d2b"]),
        om * dac["d1"] + alc * dom["d1"] - (be * bec - 1.0) * dom["d2"] - alc * bec * dom["d2b"],
        om * da["d2"] + al * dom["d2"] - (be * bec - 1.0) * dom["d1"] - al * bec * dom["d1b"],
        om * dac["d2"] - alc * dom["d2"] - alc * (alc * dom["d1"] + bec * dom["d1b"]),
        om * db["d1"] + be * dom["d1"] - al * be * dom["d2"] - (al * alc - 1.0) * dom["d2b"],
        om * dbc["d1"] - bec * dom["d1"] - bec * (al * dom["d2"] + bec * dom["d2b"]),
        om * db["d2"] + be * dom["d2"] - alc * be * dom["d1"] - (al * alc - 1.0) * dom["d1b"],
        om * dbc["d2"] - bec * dom["d2"] - bec * (alc * dom["d1"] + bec * dom["d1b"]),
    ]
    moduli = [abs(e) for e in eqs]
    return max(moduli), eqs


def polar_parallel_residual(omega_program, a_program, b_program, theta_program, phi_program, point):
    """Residual moduli of the eight polar-form parallel conditions."""
    data = _system_data(
        omega_program,
        {"a": a_program, "b": b_program, "theta": theta_program, "phi": phi_program},
        point,
    )
    om, dom = data["Omega"], data["dOmega"]
    a, b = data["a"].real, data["b"].real
    if a < 1e-10 or b < 1e-10:
        raise PolarDegeneracy("polar radii must stay positive")
    th, ph = data["theta"].real, data["phi"].real
    da, db_, dth, dph = data["da"], data["db"], data["dtheta"], data["dphi"]
    eith, eiph = np.exp(1j * th), np.exp(1j * ph)
    s, d = a * a + b * b - 1.0, a * a - b * b
    eqs = [
        2 * om * da["d1"] - s * eith * dom["d2"] - 2 * a * b / eiph * dom["d2b"],
        2 * om * db_["d1"] - 2 * a * b * eith * dom["d2"] - s / eiph * dom["d2b"],
        2 * om * da["d2"] - s / eith * dom["d1"] - 2 * a * b / eiph * dom["d1b"],
        2 * om * db_["d2"] - 2 * a * b / eith * dom["d1"] - s / eiph * dom["d1b"],
        2j * a * om * dth["d1"] - 2 * a * dom["d1"] - (d + 1.0) * eith * dom["d2"],
        2j * b * om * dph["d1"] + 2 * b * dom["d1"] - (d - 1.0) / eiph * dom["d2b"],
        2j * a * om * dth["d2"] + (d + 1.0) / eith * dom["d1"] + 2 * a * dom["d2"],
        2j * b * om * dph["d2"] - (d - 1.0) / eiph * dom["d1b"] + 2 * b * dom["d2"],
    ]
    moduli = [abs(e) for e in eqs]
    return max(moduli), eqs


def polar_recombination(complex_eqs, theta: float, phi: float) -> list:
    """The polar residual vector as the exact phase recombination of the
    complex residual vector (verifies the two printed systems agree)."""
    E = complex_eqs
    eith, eiph = np.exp(1j * theta), np.exp(1j * phi)
    return [
        E[0] / eith + E[1] * eith,
        E[4] / eiph + E[5] * eiph,
        E[2] / eith + E[3] * eith,
        E[6] / eiph + E[7] * eiph,
        E[0] / eith - E[1] * eith,
        E[4] / eiph - E[5] * eiph,
        E[2] / eith - E[3] * eith,
        E[6] / eiph - E[7] * eiph,
    ]
