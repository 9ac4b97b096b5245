"""Flattenings, the dilogarithm and the extended Rogers function.

A flattening ``[z; p, q]`` of an ideal tetrahedron is stored with its
log-parameters ``w0 = Log z + p*pi*i``, ``w1 = -Log(1 - z) + q*pi*i`` and
``w2 = -w0 - w1``.  :func:`sigma_hat` builds one from four vectors of C^2
using sign-fixed log-determinants, and :func:`rogers_R` evaluates it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegeneracyError, NumericalError
from .quandle import INF, PI, DetConvention, Log, ProjVector, det, log_det

PI2 = PI * PI
INTEGRALITY_TOL = 1e-6
FLATTENING_TOL = 1e-9


def _bernoulli(n: int) -> list[Fraction]:
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(math.comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return B


# Coefficients of Li2(z) = sum_n c_n u^(n+1), u = -Log(1 - z).  Odd terms past
# n = 1 vanish; the series converges for |u| < 2 pi.
_BERN_COEFFS = [(n, float(b / math.factorial(n + 1)))
                for n, b in enumerate(_bernoulli(40)) if b != 0]


def li2(z) -> complex:
    """Principal branch of the dilogarithm, ``-int_0^z Log(1 - t)/t dt``.

    On the cut ``(1, inf)`` the value follows ``Log``'s convention
    ``arg = pi`` for negative reals, giving ``Im Li2(x) = -pi log x``.
    """
    z = complex(z)
    if z == 0:
        return 0j
    if z == 1:
        return complex(PI2 / 6)
    if abs(z) > 1:
        lz = Log(-z)
        return -PI2 / 6 - 0.5 * lz * lz - _li2_unit(1 / z)
    return _li2_unit(z)


def _li2_unit(z: complex) -> complex:
    if z.real > 0.5:
        return PI2 / 6 - Log(z) * Log(1 - z) - _li2_small(1 - z)
    return _li2_small(z)


def _li2_small(z: complex) -> complex:
    # |z| <= 1 and Re z <= 1/2 here
    if z == 0:
        return 0j
    if abs(z) <= 0.5:
        total, term, k = 0j, z, 1
        while True:
            add = term / (k * k)
            total += add
            if abs(add) < 1e-18 * max(abs(total), 1e-300):
                return total
            term *= z
            k += 1
    u = -Log(1 - z)
    total = 0j
    for n, c in _BERN_COEFFS:
        add = c * u ** (n + 1)
        total += add
        if abs(add) < 1e-18:
            break
    return total


def bloch_wigner(z) -> float:
    """``D(z) = Im Li2(z) + arg(1 - z) log|z|``, the volume of the ideal tetrahedron."""
    z = complex(z)
    if z.imag == 0:
        return 0.0
    return li2(z).imag + cmath.phase(1 - z) * math.log(abs(z))


def cross_ratio(z0, z1, z2, z3) -> complex:
    """``[z0:z1:z2:z3] = (z3 - z0)(z2 - z1) / ((z3 - z1)(z2 - z0))``; accepts ``INF``."""
    pts = [z0, z1, z2, z3]
    for i in range(4):
        for j in range(i):
            if pts[i] is INF and pts[j] is INF or (
                    pts[i] is not INF and pts[j] is not INF and pts[i] == pts[j]):
                raise DegeneracyError("coincident points in cross ratio")

    def diff(a, b):
        # (a - b), or None standing for an infinite factor
        return None if a is INF or b is INF else complex(a) - complex(b)

    num = [diff(z3, z0), diff(z2, z1)]
    den = [diff(z3, z1), diff(z2, z0)]
    # one infinite point appears once upstairs and once downstairs; cancel
    num = [x for x in num if x is not None]
    den = [x for x in den if x is not None]
    out = complex(1)
    for x in num:
        out *= x
    for x in den:
        out /= x
    return out


@dataclass(frozen=True)
class Flattening:
    z: complex
    p: int
    q: int
    w0: complex = field(default=None, compare=False)
    w1: complex = field(default=None, compare=False)
    w2: complex = field(default=None, compare=False)

    def __post_init__(self):
        z = complex(self.z)
        if z == 0 or z == 1:
            raise DegeneracyError(f"flattening parameter {z} is 0 or 1")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "q", int(self.q))
        w0 = Log(z) + self.p * PI * 1j
        w1 = -Log(1 - z) + self.q * PI * 1j
        if self.w0 is None:
            object.__setattr__(self, "w0", w0)
            object.__setattr__(self, "w1", w1)
            object.__setattr__(self, "w2", -w0 - w1)
        else:
            self.validate()

    def validate(self, tol: float = FLATTENING_TOL) -> None:
        w0 = Log(self.z) + self.p * PI * 1j
        w1 = -Log(1 - self.z) + self.q * PI * 1j
        scale = max(1.0, abs(self.w0), abs(self.w1), abs(self.w2))
        bad = max(abs(w0 - self.w0), abs(w1 - self.w1), abs(self.w0 + self.w1 + self.w2))
        if bad > tol * scale:
            raise NumericalError(f"inconsistent flattening {self!r} (residual {bad:.2e})")

    @property
    def ws(self) -> tuple[complex, complex, complex]:
        return self.w0, self.w1, self.w2

    def to_json(self) -> dict:
        return {"z": [self.z.real, self.z.imag], "p": self.p, "q": self.q}

    @classmethod
    def from_json(cls, data: dict) -> "Flattening":
        re, im = data["z"]
        return cls(complex(re, im), data["p"], data["q"])


def sigma_hat(vertices: Sequence[ProjVector], sign: int = 1,
              convention: DetConvention | None = None,
              integrality_tol: float = INTEGRALITY_TOL) -> tuple[int, Flattening]:
    """Flattening of the ideal tetrahedron spanned by four vectors of C^2."""
    if len(vertices) != 4:
        raise ValueError("a tetrahedron has four vertices")
    v = vertices
    c = {(i, j): log_det(v[i], v[j], convention) for i in range(4) for j in range(i + 1, 4)}
    w0 = c[0, 3] + c[1, 2] - c[0, 2] - c[1, 3]
    w1 = c[0, 2] + c[1, 3] - c[0, 1] - c[2, 3]
    w2 = c[0, 1] + c[2, 3] - c[0, 3] - c[1, 2]
    # cross ratio of the h-values, written through determinants so that
    # points at infinity need no special handling
    z = det(v[0], v[3]) * det(v[1], v[2]) / (det(v[0], v[2]) * det(v[1], v[3]))
    pr = (w0 - Log(z)) / (PI * 1j)
    qr = (w1 + Log(1 - z)) / (PI * 1j)
    p, q = round(pr.real), round(qr.real)
    resid = max(abs(pr - p), abs(qr - q))
    if resid > integrality_tol:
        raise NumericalError(f"flattening integrality residual {resid:.2e}")
    if abs(w0 + w1 + w2) > FLATTENING_TOL * max(1.0, abs(w0), abs(w1)):
        raise NumericalError("log-parameters do not sum to zero")
    return sign, Flattening(z, p, q, w0, w1, w2)


def rogers_R(f: Flattening) -> complex:
    """``R(z; p, q) = Li2(z) + Log z Log(1-z)/2 + (pi i/2)(q Log z - p Log(1/(1-z))) - pi^2/6``."""
    z = f.z
    lz, l1z = Log(z), Log(1 - z)
    return (li2(z) + 0.5 * lz * l1z
            + 0.5j * PI * (f.q * lz - f.p * Log(1 / (1 - z))) - PI2 / 6)


def reduce_mod_pi2(x: complex) -> complex:
    """Move the real part into ``(-pi^2/2, pi^2/2]``."""
    x = complex(x)
    re = x.real - PI2 * math.ceil(x.real / PI2 - 0.5)
    return complex(re, x.imag)


def diff_mod_pi2(a: complex, b: complex) -> float:
    """Distance between ``a`` and ``b`` in C / pi^2 Z."""
    return abs(reduce_mod_pi2(complex(a) - complex(b)))


class BlochElement:
    """A signed sum of flattenings."""

    def __init__(self, terms: Iterable[tuple[int, Flattening]] = ()):
        self.terms = list(terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other: "BlochElement") -> "BlochElement":
        return BlochElement(self.terms + other.terms)

    def __neg__(self) -> "BlochElement":
        return BlochElement([(-s, f) for s, f in self.terms])

    def volume(self) -> float:
        return sum(s * bloch_wigner(f.z) for s, f in self.terms)

    def to_json(self) -> list[dict]:
        return [{"sign": s, **f.to_json()} for s, f in self.terms]

    @classmethod
    def from_json(cls, data: list[dict]) -> "BlochElement":
        return cls([(int(t["sign"]), Flattening.from_json(t)) for t in data])

    def __repr__(self):
        return f"BlochElement({len(self.terms)} terms)"


def evaluate(e: BlochElement | Iterable[tuple[int, Flattening]]) -> complex:
    total = sum((s * rogers_R(f) for s, f in e), 0j)
    return reduce_mod_pi2(total)


def _faces(vs):
    return [[v for j, v in enumerate(vs) if j != i] for i in range(5)]


def five_term_element(vs: Sequence[ProjVector],
                      convention: DetConvention | None = None) -> BlochElement:
    """``sum_i (-1)^i sigma_hat(v0 .. ^vi .. v4)``."""
    if len(vs) != 5:
        raise ValueError("five vectors required")
    return BlochElement([sigma_hat(face, (-1) ** i, convention) for i, face in enumerate(_faces(vs))])


# (upper, lower) index pairs with coefficients: entry (i, k, s) stands for s * w_k^i,
# where w^i is the flattening of the face that omits vertex i.
LIFTED_FIVE_TERM = {
    "z0z1": [(2, 0, 1), (3, 0, -1), (4, 0, 1)],
    "z0z2": [(1, 0, -1), (3, 2, -1), (4, 2, 1)],
    "z1z2": [(0, 0, 1), (3, 1, -1), (4, 1, 1)],
    "z1z3": [(0, 2, 1), (2, 1, 1), (4, 2, 1)],
    "z2z3": [(0, 1, 1), (1, 1, -1), (4, 0, 1)],
    "z2z4": [(0, 2, 1), (1, 2, -1), (3, 0, -1)],
    "z3z4": [(0, 0, 1), (1, 0, -1), (2, 0, 1)],
    "z3z0": [(1, 2, -1), (2, 2, 1), (4, 1, 1)],
    "z4z0": [(1, 1, -1), (2, 1, 1), (3, 1, -1)],
    "z4z1": [(0, 1, 1), (2, 2, 1), (3, 2, -1)],
}


def lifted_five_term_equations(vs: Sequence[ProjVector],
                               convention: DetConvention | None = None) -> dict[str, complex]:
    """Left-hand sides of the ten log-parameter relations (each should vanish)."""
    e = five_term_element(vs, convention)
    ws = [f.ws for _, f in e]
    return {name: sum(s * ws[i][k] for i, k, s in terms) for name, terms in LIFTED_FIVE_TERM.items()}


def five_term_residual(*vs: ProjVector, convention: DetConvention | None = None,
                       tol: float = FLATTENING_TOL) -> float:
    """``|R(sum_i (-1)^i sigma_hat(faces))|`` mod pi^2.

    Also checks the ten log-parameter relations and raises
    :class:`NumericalError` if one fails by more than ``tol``.
    """
    if len(vs) == 1 and not isinstance(vs[0], ProjVector):
        vs = tuple(vs[0])
    eqs = lifted_five_term_equations(vs, convention)
    worst = max(abs(x) for x in eqs.values())
    if worst > tol:
        raise NumericalError(f"lifted five-term relation violated by {worst:.2e}")
    return abs(evaluate(five_term_element(vs, convention)))
