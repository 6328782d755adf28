"""Second-order forward-mode jets on a 4-dimensional chart.

A :class:`Jet2` carries the value, the 4-gradient and the symmetric 4x4
Hessian of a scalar and propagates them exactly (truncated Taylor arithmetic,
no step-size error) through +, -, *, /, powers and the elementary functions
below.  :class:`ComplexJet` is a pair of real jets with complex-ring
arithmetic; it hosts the Wirtinger calculus used by the complex-coordinate
charts.

All jets may be batched: ``value`` has shape ``()`` or ``(N,)``, ``grad``
gains a trailing ``(4,)`` axis and ``hess`` a trailing ``(4, 4)`` axis.  The
same scalar programs therefore evaluate at one point or at N points at once.

The module-level math functions (``sqrt``, ``exp``, ...) dispatch on their
argument type and fall back to numpy for plain floats/arrays, so a fixture
program written against them can be fed to the finite-difference oracle
without touching any jet code path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DivisionByZero, DomainError

DIM = 4
DIV_EPS = 1e-14
REAL_EPS = 1e-10  # |imaginary part| below this counts as exactly real


def _outer(a, b):
    return a[..., :, None] * b[..., None, :]


@dataclass(frozen=True)
class Jet2:
    """Value, gradient and Hessian of a real scalar at a chart point."""

    value: np.ndarray
    grad: np.ndarray
    hess: np.ndarray

    # -- construction -----------------------------------------------------
    @staticmethod
    def constant(c, like: "Jet2 | None" = None) -> "Jet2":
        v = np.asarray(c, dtype=float)
        return Jet2(v, np.zeros(v.shape + (DIM,)), np.zeros(v.shape + (DIM, DIM)))

    @staticmethod
    def _lift(x) -> "Jet2":
        if isinstance(x, Jet2):
            return x
        return Jet2.constant(x)

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        if isinstance(other, ComplexJet):
            return ComplexJet(self, _zero_like(self)) + other
        o = Jet2._lift(other)
        return Jet2(self.value + o.value, self.grad + o.grad, self.hess + o.hess)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.value, -self.grad, -self.hess)

    def __sub__(self, other):
        return self + (-other if isinstance(other, (Jet2, ComplexJet)) else -np.asarray(other, dtype=float))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ComplexJet):
            return ComplexJet(self, _zero_like(self)) * other
        o = Jet2._lift(other)
        v = self.value * o.value
        g = self.value[..., None] * o.grad + o.value[..., None] * self.grad
        h = (
            self.value[..., None, None] * o.hess
            + o.value[..., None, None] * self.hess
            + _outer(self.grad, o.grad)
            + _outer(o.grad, self.grad)
        )
        return Jet2(v, g, h)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet2":
        if np.any(np.abs(self.value) < DIV_EPS):
            raise DivisionByZero("jet denominator has |value| < 1e-14")
        iv = 1.0 / self.value
        iv2 = iv * iv
        iv3 = iv2 * iv
        g = -self.grad * iv2[..., None]
        h = -self.hess * iv2[..., None, None] + 2.0 * iv3[..., None, None] * _outer(self.grad, self.grad)
        return Jet2(iv, g, h)

    def __truediv__(self, other):
        if isinstance(other, ComplexJet):
            return ComplexJet(self, _zero_like(self)) / other
        return self * Jet2._lift(other).reciprocal()

    def __rtruediv__(self, other):
        return Jet2._lift(other) * self.reciprocal()

    def __pow__(self, k):
        return power(self, k)

    # -- helpers -----------------------------------------------------------
    def chain(self, f0, f1, f2) -> "Jet2":
        """Compose with a scalar function given its value/first/second derivative."""
        g = f1[..., None] * self.grad
        h = f1[..., None, None] * self.hess + f2[..., None, None] * _outer(self.grad, self.grad)
        return Jet2(np.asarray(f0, dtype=float), g, h)

    @property
    def batched(self) -> bool:
        return np.ndim(self.value) > 0


def _zero_like(j: Jet2) -> Jet2:
    return Jet2(np.zeros_like(j.value), np.zeros_like(j.grad), np.zeros_like(j.hess))


@dataclass(frozen=True)
class ComplexJet:
    """Complex scalar jet; conjugation negates the imaginary part."""

    re: Jet2
    im: Jet2

    @staticmethod
    def _lift(x) -> "ComplexJet":
        if isinstance(x, ComplexJet):
            return x
        if isinstance(x, Jet2):
            return ComplexJet(x, _zero_like(x))
        z = complex(x)
        return ComplexJet(Jet2.constant(z.real), Jet2.constant(z.imag))

    def __add__(self, other):
        o = ComplexJet._lift(other)
        return ComplexJet(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexJet(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-ComplexJet._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = ComplexJet._lift(other)
        return ComplexJet(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "ComplexJet":
        return ComplexJet(self.re, -self.im)

    def __truediv__(self, other):
        o = ComplexJet._lift(other)
        d = (o.re * o.re + o.im * o.im).reciprocal()
        n = self * o.conj()
        return ComplexJet(n.re * d, n.im * d)

    def __rtruediv__(self, other):
        return ComplexJet._lift(other) / self

    def __pow__(self, k):
        return power(self, k)

    @property
    def cvalue(self) -> np.ndarray:
        return self.re.value + 1j * self.im.value

    def is_real(self, tol: float = REAL_EPS) -> bool:
        return (
            float(np.max(np.abs(self.im.value), initial=0.0)) < tol
            and float(np.max(np.abs(self.im.grad), initial=0.0)) < tol
            and float(np.max(np.abs(self.im.hess), initial=0.0)) < tol
        )

    def real_part_checked(self, tol: float = REAL_EPS) -> Jet2:
        if not self.is_real(tol):
            raise DomainError("expression expected to be real has nonzero imaginary part")
        return self.re


def imaginary_unit() -> ComplexJet:
    return ComplexJet(Jet2.constant(0.0), Jet2.constant(1.0))


# ---------------------------------------------------------------------------
# elementary functions, generic over float / ndarray / Jet2 / ComplexJet
# ---------------------------------------------------------------------------

def _require_positive_real(x, what: str) -> Jet2:
    if isinstance(x, ComplexJet):
        if not x.is_real():
            raise DomainError(f"{what} of a non-real argument")
        x = x.re
    if isinstance(x, Jet2):
        if np.any(x.value <= 0.0):
            raise DomainError(f"{what} of a non-positive value")
        return x
    if np.any(np.asarray(x) <= 0.0):
        raise DomainError(f"{what} of a non-positive value")
    return x


def sqrt(x):
    x = _require_positive_real(x, "sqrt")
    if isinstance(x, Jet2):
        s = np.sqrt(x.value)
        return x.chain(s, 0.5 / s, -0.25 / (s * s * s))
    return np.sqrt(x)


def log(x):
    x = _require_positive_real(x, "log")
    if isinstance(x, Jet2):
        return x.chain(np.log(x.value), 1.0 / x.value, -1.0 / (x.value * x.value))
    return np.log(x)


def exp(x):
    if isinstance(x, ComplexJet):
        m = exp(x.re)
        return ComplexJet(m * cos(x.im), m * sin(x.im))
    if isinstance(x, Jet2):
        e = np.exp(x.value)
        return x.chain(e, e, e)
    return np.exp(x)


def sin(x):
    if isinstance(x, ComplexJet):
        return ComplexJet(sin(x.re) * cosh(x.im), cos(x.re) * sinh(x.im))
    if isinstance(x, Jet2):
        s, c = np.sin(x.value), np.cos(x.value)
        return x.chain(s, c, -s)
    return np.sin(x)


def cos(x):
    if isinstance(x, ComplexJet):
        return ComplexJet(cos(x.re) * cosh(x.im), -(sin(x.re) * sinh(x.im)))
    if isinstance(x, Jet2):
        s, c = np.sin(x.value), np.cos(x.value)
        return x.chain(c, -s, -c)
    return np.cos(x)


def sinh(x):
    if isinstance(x, Jet2):
        s, c = np.sinh(x.value), np.cosh(x.value)
        return x.chain(s, c, s)
    return np.sinh(x)


def cosh(x):
    if isinstance(x, Jet2):
        s, c = np.sinh(x.value), np.cosh(x.value)
        return x.chain(c, s, c)
    return np.cosh(x)


def atan2(y, x):
    """Quadrant-correct arctangent; derivatives are those of Im log(x + iy)."""
    if not isinstance(y, Jet2) and not isinstance(x, Jet2):
        return np.arctan2(y, x)
    y = Jet2._lift(y)
    x = Jet2._lift(x)
    r2 = x.value * x.value + y.value * y.value
    if np.any(r2 < DIV_EPS):
        raise DomainError("atan2 at the origin")
    # dtheta = (x dy - y dx) / r^2, assembled as a jet through protected branches
    use_x = np.abs(x.value) >= np.abs(y.value)
    safe_x = Jet2(np.where(use_x, x.value, 1.0), x.grad, x.hess)
    safe_y = Jet2(np.where(use_x, 1.0, y.value), y.grad, y.hess)
    qa = y / safe_x          # atan(y/x) branch
    qb = x / safe_y          # -atan(x/y) branch
    fa = qa.chain(np.zeros_like(qa.value), 1.0 / (1.0 + qa.value**2), -2.0 * qa.value / (1.0 + qa.value**2) ** 2)
    fb = qb.chain(np.zeros_like(qb.value), -1.0 / (1.0 + qb.value**2), 2.0 * qb.value / (1.0 + qb.value**2) ** 2)
    if np.ndim(use_x) == 0:
        pick = fa if use_x else fb
        return Jet2(np.arctan2(y.value, x.value), pick.grad, pick.hess)
    g = np.where(use_x[..., None], fa.grad, fb.grad)
    h = np.where(use_x[..., None, None], fa.hess, fb.hess)
    return Jet2(np.arctan2(y.value, x.value), g, h)


def abs2(z):
    """Squared modulus; real jet for complex jets, |x|^2 otherwise."""
    if isinstance(z, ComplexJet):
        return z.re * z.re + z.im * z.im
    if isinstance(z, Jet2):
        return z * z
    return np.real(z * np.conj(z))


def conj(z):
    if isinstance(z, ComplexJet):
        return z.conj()
    if isinstance(z, Jet2):
        return z
    return np.conj(z)


def real(z):
    if isinstance(z, ComplexJet):
        return z.re
    if isinstance(z, Jet2):
        return z
    return np.real(z)


def imag(z):
    if isinstance(z, ComplexJet):
        return z.im
    if isinstance(z, Jet2):
        return _zero_like(z)
    return np.imag(z)


def power(x, k):
    """x**k: exact repeated products for integer k, exp(k log x) otherwise."""
    if isinstance(k, (Jet2, ComplexJet)):
        raise DomainError("jet-valued exponents are not supported")
    kf = float(np.real(k))
    if abs(kf - round(kf)) < 1e-12 and abs(kf) <= 64:
        n = int(round(kf))
        if isinstance(x, (Jet2, ComplexJet)):
            if n == 0:
                one = Jet2.constant(1.0)
                return one if isinstance(x, Jet2) else ComplexJet._lift(1.0)
            base = x if n > 0 else (1.0 / x)
            out = base
            for _ in range(abs(n) - 1):
                out = out * base
            return out
        return np.asarray(x) ** n
    if isinstance(x, ComplexJet):
        x = _require_positive_real(x, "fractional power")
    if isinstance(x, Jet2):
        _require_positive_real(x, "fractional power")
        v = x.value**kf
        return x.chain(v, kf * x.value ** (kf - 1.0), kf * (kf - 1.0) * x.value ** (kf - 2.0))
    return np.asarray(x) ** kf


# ---------------------------------------------------------------------------
# seeding and the finite-difference oracle
# ---------------------------------------------------------------------------

def jet_seed(point, axis: int) -> Jet2:
    """Coordinate jet of ``x[axis]`` at ``point`` (shape (4,) or (N, 4))."""
    if axis not in (0, 1, 2, 3):
        raise ValueError("axis must be one of 0..3")
    p = np.asarray(point, dtype=float)
    batch = p.shape[:-1]
    grad = np.zeros(batch + (DIM,))
    grad[..., axis] = 1.0
    return Jet2(p[..., axis].copy(), grad, np.zeros(batch + (DIM, DIM)))


def seed_point(point):
    """All four coordinate jets at once."""
    return tuple(jet_seed(point, a) for a in range(DIM))


def jet_apply(f, point) -> Jet2:
    """Evaluate a scalar program over the jet ring at ``point``.

    ``f`` receives the four coordinate jets and must return a Jet2 (or a
    ComplexJet that is numerically real).
    """
    out = f(*seed_point(point))
    if isinstance(out, ComplexJet):
        return out.real_part_checked()
    if not isinstance(out, Jet2):
        return Jet2.constant(out)
    return out


def fd_oracle(f, point, grad_step: float = 1e-5, hess_step: float = 1e-4):
    """Central-difference gradient and Hessian of a plain-float scalar program.

    Deliberately shares no code with jet propagation: ``f`` is called on float
    coordinates only.
    """
    p = np.asarray(point, dtype=float)

    def ev(q):
        out = f(*q)
        return complex(out).real if isinstance(out, complex) else float(np.real(out))

    grad = np.zeros(DIM)
    for a in range(DIM):
        e = np.zeros(DIM)
        e[a] = grad_step
        grad[a] = (ev(p + e) - ev(p - e)) / (2.0 * grad_step)

    hess = np.zeros((DIM, DIM))
    f0 = ev(p)
    h = hess_step
    for a in range(DIM):
        e = np.zeros(DIM)
        e[a] = h
        hess[a, a] = (ev(p + e) - 2.0 * f0 + ev(p - e)) / (h * h)
    for a in range(DIM):
        for b in range(a + 1, DIM):
            ea = np.zeros(DIM)
            eb = np.zeros(DIM)
            ea[a] = h
            eb[b] = h
            hess[a, b] = hess[b, a] = (
                ev(p + ea + eb) - ev(p + ea - eb) - ev(p - ea + eb) + ev(p - ea - eb)
            ) / (4.0 * h * h)
    return grad, hess


def complex_pair(xs) -> tuple[ComplexJet, ComplexJet]:
    """Bundle four real coordinate jets as (x0 + i x1, x2 + i x3)."""
    x0, x1, x2, x3 = xs
    return ComplexJet(x0, x1), ComplexJet(x2, x3)
