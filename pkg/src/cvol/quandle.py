"""The parabolic quandle: non-zero vectors of C^2 modulo sign.

A vector ``(a, b)`` stands for the parabolic element of PSL(2, C) whose
fixed vector is ``(a, b)``.  The quandle operation is the left action

    x * y = M(y) x,   M(y) = [[1 + cd, -c^2], [d^2, 1 - cd]]   for y = (c, d),

which can be written without the matrix as ``x * y = x + det(x, y) y``.
Every operation here is invariant under replacing any argument by its
negative; the canonical representative is only used for display and keys.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DegeneracyError

DEFAULT_TOL = 1e-9
DEGENERACY_TOL = 1e-8

PI = math.pi


class _Infinity:
    """The point at infinity of the Riemann sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def Log(z) -> complex:
    """Principal logarithm with argument in (-pi, pi].

    ``cmath.log`` honours the sign of a zero imaginary part, which would put
    negative reals at ``-pi``; that is normalised away here.
    """
    z = complex(z)
    if z.imag == 0.0:
        if z.real == 0.0:
            raise ValueError("Log(0)")
        if z.real < 0:
            return complex(math.log(-z.real), PI)
        return complex(math.log(z.real), 0.0)
    return cmath.log(z)


def arg(z) -> float:
    return Log(z).imag


@dataclass(frozen=True, slots=True)
class ProjVector:
    """A representative ``(a, b)`` of a class in (C^2 \\ {0}) / +-."""

    a: complex
    b: complex

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        if self.a == 0 and self.b == 0:
            raise ValueError("ProjVector must be non-zero")

    def __neg__(self):
        return ProjVector(-self.a, -self.b)

    def __iter__(self):
        yield self.a
        yield self.b

    def norm(self) -> float:
        return math.hypot(abs(self.a), abs(self.b))

    def canonical(self) -> "ProjVector":
        lead = self.a if self.a != 0 else self.b
        if not 0.0 <= arg(lead) < PI:
            return -self
        return self

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b], dtype=complex)

    def to_json(self):
        return [[self.a.real, self.a.imag], [self.b.real, self.b.imag]]

    @classmethod
    def from_json(cls, data) -> "ProjVector":
        (ar, ai), (br, bi) = data
        return cls(complex(ar, ai), complex(br, bi))

    def __repr__(self):
        c = self.canonical()
        return f"ProjVector({c.a:.6g}, {c.b:.6g})"


def det(x: ProjVector, y: ProjVector) -> complex:
    return x.a * y.b - x.b * y.a


def qmul(x: ProjVector, y: ProjVector) -> ProjVector:
    """``x * y``."""
    d = det(x, y)
    return ProjVector(x.a + d * y.a, x.b + d * y.b)


def qmul_inv(x: ProjVector, y: ProjVector) -> ProjVector:
    """``x *^-1 y``, the inverse of ``* y``."""
    d = det(x, y)
    return ProjVector(x.a - d * y.a, x.b - d * y.b)


def qpow(x: ProjVector, y: ProjVector, exponent: int) -> ProjVector:
    """``x *^n y``: ``* y`` applied ``n`` times, or ``*^-1 y`` when ``n < 0``."""
    op = qmul if exponent > 0 else qmul_inv
    for _ in range(abs(exponent)):
        x = op(x, y)
    return x


QuandleWord = Sequence[tuple[ProjVector, int]]


def act_word(x: ProjVector, word: QuandleWord) -> ProjVector:
    """Right action of ``x_1^e_1 ... x_n^e_n`` in the associated group."""
    for y, e in word:
        if e not in (1, -1):
            raise ValueError(f"exponent must be +1 or -1, got {e}")
        x = qpow(x, y, e)
    return x


def inverse_element(x: ProjVector) -> ProjVector:
    """The vector of the inverse parabolic element, ``(i a, i b)``."""
    return ProjVector(1j * x.a, 1j * x.b)


def to_matrix(x: ProjVector) -> np.ndarray:
    """Parabolic SL(2, C) matrix of ``x`` (trace 2); right multiplication form."""
    a, b = x.a, x.b
    return np.array([[1 + a * b, b * b], [-a * a, 1 - a * b]], dtype=complex)


def action_matrix(y: ProjVector) -> np.ndarray:
    """Matrix acting on column vectors from the left so that ``M x = x * y``."""
    c, d = y.a, y.b
    return np.array([[1 + c * d, -c * c], [d * d, 1 - c * d]], dtype=complex)


def apply_matrix(g, x: ProjVector) -> ProjVector:
    g = np.asarray(g)
    return ProjVector(g[0, 0] * x.a + g[0, 1] * x.b, g[1, 0] * x.a + g[1, 1] * x.b)


def h_value(x: ProjVector):
    """Image in CP^1, ``a / b``; returns :data:`INF` when ``b == 0``."""
    if x.b == 0:
        return INF
    return x.a / x.b


def mobius(g, z):
    g = np.asarray(g)
    a, b, c, d = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
    if z is INF:
        return INF if c == 0 else a / c
    den = c * z + d
    if den == 0:
        return INF
    return (a * z + b) / den


def normalized_det(x: ProjVector, y: ProjVector) -> float:
    return abs(det(x, y)) / (x.norm() * y.norm())


def is_degenerate_pair(x: ProjVector, y: ProjVector, tol: float = DEGENERACY_TOL) -> bool:
    """True when ``x`` and ``y`` define the same point of CP^1 (scale-invariant)."""
    return normalized_det(x, y) < tol


def approx_equal(x: ProjVector, y: ProjVector, tol: float = DEFAULT_TOL) -> bool:
    return proj_distance(x, y) < tol


def proj_distance(x: ProjVector, y: ProjVector) -> float:
    """``min(|x - y|, |x + y|) / max(|x|, |y|)``."""
    dm = math.hypot(abs(x.a - y.a), abs(x.b - y.b))
    dp = math.hypot(abs(x.a + y.a), abs(x.b + y.b))
    return min(dm, dp) / max(x.norm(), y.norm())


def sign_fix(d: complex) -> complex:
    """Choose the representative of ``{d, -d}`` with argument in [0, pi)."""
    if d == 0:
        raise DegeneracyError("zero determinant")
    d = complex(d)
    # decided on the signs of the components, not on a rounded argument, so
    # that d and -d always pick the same representative
    if d.imag > 0 or (d.imag == 0 and d.real > 0):
        return d
    return -d


class DetConvention:
    """A choice of sign for ``det`` on C^*/+-.

    The default picks ``arg(det)`` in [0, pi).  ``flipped`` lists
    determinant classes for which the opposite sign is used instead.
    A class is a value of ``det`` up to sign, so the choice is invariant
    under the simultaneous SL(2, C) action.
    """

    def __init__(self, flipped: Iterable[complex] = (), tol: float = 1e-9):
        self.flipped = [sign_fix(complex(d)) for d in flipped]
        self.tol = tol

    def fix(self, d: complex) -> complex:
        d = sign_fix(d)
        for f in self.flipped:
            if abs(d - f) <= self.tol * abs(f):
                return -d
        return d

    def __repr__(self):
        return f"DetConvention(flipped={self.flipped!r})"


DEFAULT_CONVENTION = DetConvention()


def log_det(x: ProjVector, y: ProjVector, convention: DetConvention | None = None,
            tol: float = DEGENERACY_TOL) -> complex:
    """Log of the sign-fixed determinant ``det(x, y)``.

    With the default convention the imaginary part lies in [0, pi).
    Raises :class:`DegeneracyError` if ``h(x) == h(y)`` to tolerance.
    """
    if is_degenerate_pair(x, y, tol):
        raise DegeneracyError(f"degenerate pair {x!r}, {y!r}")
    convention = convention or DEFAULT_CONVENTION
    return Log(convention.fix(det(x, y)))


def random_projvector(rng: np.random.Generator, rmin: float = 0.5, rmax: float = 2.0) -> ProjVector:
    """Coordinates drawn area-uniformly from the annulus ``rmin <= |z| <= rmax``."""
    r = np.sqrt(rng.uniform(rmin ** 2, rmax ** 2, size=2))
    t = rng.uniform(0.0, 2 * PI, size=2)
    z = r * np.exp(1j * t)
    return ProjVector(complex(z[0]), complex(z[1]))


def random_sl2(rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return g / np.sqrt(np.linalg.det(g))
