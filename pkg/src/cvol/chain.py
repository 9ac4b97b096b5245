"""Quandle chains ``r (x) (x_1, ..., x_n)`` with coefficients in Z[P], n <= 3.

Chains are stored as lists of signed generators and compared up to the
numerical tolerance of :func:`cvol.quandle.approx_equal`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .coloring import ShadowColoring
from .diagram import LinkDiagram, RegionStructure, build_regions, source_corner
from .errors import ColoringError
from .quandle import DEFAULT_TOL, ProjVector, approx_equal, qmul


@dataclass(frozen=True)
class QGen:
    r: ProjVector
    xs: tuple[ProjVector, ...]

    @property
    def degree(self) -> int:
        return len(self.xs)

    def is_degenerate(self, tol: float = DEFAULT_TOL) -> bool:
        return any(approx_equal(a, b, tol) for a, b in zip(self.xs, self.xs[1:]))

    def approx_eq(self, other: "QGen", tol: float = DEFAULT_TOL) -> bool:
        return (self.degree == other.degree and approx_equal(self.r, other.r, tol)
                and all(approx_equal(a, b, tol) for a, b in zip(self.xs, other.xs)))


class QChain:
    """Finite integer combination of :class:`QGen` of a fixed degree."""

    def __init__(self, terms: Iterable[tuple[int, QGen]] = (), degree: int | None = None):
        self.terms = [(int(c), g) for c, g in terms if c != 0]
        degrees = {g.degree for _, g in self.terms}
        if len(degrees) > 1:
            raise ValueError(f"mixed degrees {sorted(degrees)}")
        self.degree = degrees.pop() if degrees else degree

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other: "QChain") -> "QChain":
        return QChain(self.terms + other.terms, self.degree or other.degree)

    def __neg__(self) -> "QChain":
        return QChain([(-c, g) for c, g in self.terms], self.degree)

    def __sub__(self, other: "QChain") -> "QChain":
        return self + (-other)

    def __mul__(self, k: int) -> "QChain":
        return QChain([(k * c, g) for c, g in self.terms], self.degree)

    __rmul__ = __mul__

    def mass(self) -> int:
        return sum(abs(c) for c, _ in self.terms)

    def canonical(self, tol: float = DEFAULT_TOL, quandle: bool = True) -> "QChain":
        """Merge approximately equal generators; drop degenerate ones if ``quandle``."""
        merged: list[list] = []
        for c, g in self.terms:
            if quandle and g.is_degenerate(tol):
                continue
            for slot in merged:
                if slot[1].approx_eq(g, tol):
                    slot[0] += c
                    break
            else:
                merged.append([c, g])
        return QChain([(c, g) for c, g in merged if c != 0], self.degree)

    def is_zero(self, tol: float = DEFAULT_TOL, quandle: bool = True) -> bool:
        return len(self.canonical(tol, quandle)) == 0

    def to_json(self) -> list[dict]:
        if self.degree != 2:
            raise ValueError("only degree-2 chains are serialised")
        return [{"sign": c, "r": g.r.to_json(), "x": g.xs[0].to_json(), "y": g.xs[1].to_json()}
                for c, g in self.terms]

    @classmethod
    def from_json(cls, data: list[dict]) -> "QChain":
        return cls([(t["sign"], QGen(ProjVector.from_json(t["r"]),
                                     (ProjVector.from_json(t["x"]), ProjVector.from_json(t["y"]))))
                    for t in data], 2)

    def __repr__(self):
        return f"QChain(degree={self.degree}, terms={len(self.terms)})"


def gen(r: ProjVector, *xs: ProjVector) -> QGen:
    return QGen(r, tuple(xs))


def boundary(c: QChain, quandle: bool = True, tol: float = DEFAULT_TOL) -> QChain:
    """Boundary map; with ``quandle=True`` degenerate output generators are dropped.

    ``d(r (x) (x_1..x_n)) = sum_i (-1)^i [ r (x) (.. ^x_i ..)
                                  - (r*x_i) (x) (x_1*x_i, .., x_{i-1}*x_i, x_{i+1}, ..) ]``
    """
    if c.degree not in (1, 2, 3):
        raise ValueError(f"boundary supports degrees 1..3, got {c.degree}")
    out = []
    for k, g in c:
        xs = g.xs
        for i in range(len(xs)):
            s = k * (-1) ** (i + 1)
            xi = xs[i]
            out.append((s, QGen(g.r, xs[:i] + xs[i + 1:])))
            moved = tuple(qmul(a, xi) for a in xs[:i]) + xs[i + 1:]
            out.append((-s, QGen(qmul(g.r, xi), moved)))
    res = QChain(out, c.degree - 1)
    if quandle:
        res = QChain([(s, h) for s, h in res if not h.is_degenerate(tol)], c.degree - 1)
    return res


def crossing_generator(d: LinkDiagram, S: ShadowColoring, regions: RegionStructure, i: int):
    """``(sign, r_c, x_c, y_c)`` at crossing ``i``."""
    x = d.crossings[i]
    try:
        r = S.regions[regions.corner[(i, source_corner(x))]]
        xc = S.arcs[x.under_in_arc if x.sign > 0 else x.under_out_arc]
        yc = S.arcs[x.over_arc]
    except KeyError as exc:
        raise ColoringError(f"shadow coloring misses a color at crossing {i}: {exc}") from None
    return x.sign, r, xc, yc


def fundamental_cycle(d: LinkDiagram, S: ShadowColoring, regions: RegionStructure | None = None,
                      tol: float = DEFAULT_TOL) -> QChain:
    """``C(S) = sum_c sign_c r_c (x) (x_c, y_c)``, canonicalised."""
    regions = regions or build_regions(d)
    terms = []
    for i in range(d.n_crossings):
        s, r, xc, yc = crossing_generator(d, S, regions, i)
        terms.append((s, gen(r, xc, yc)))
    return QChain(terms, 2).canonical(tol)


@dataclass
class CycleReport:
    ok: bool
    mass: int
    leftover: QChain

    def __bool__(self):
        return self.ok


def is_cycle(c: QChain, tol: float = DEFAULT_TOL) -> CycleReport:
    if len(c) == 0:
        return CycleReport(True, 0, QChain([], (c.degree or 2) - 1))
    left = boundary(c, tol=tol).canonical(tol)
    return CycleReport(len(left) == 0, left.mass(), left)
