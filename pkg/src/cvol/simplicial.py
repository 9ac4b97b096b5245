"""Simplicial chains with vertices in the parabolic quandle, and the maps into them.

Chains live in the coinvariants under the diagonal SL(2, C) action, so two
simplices are identified when some unit-determinant matrix carries one onto
the other (vertices taken up to sign).  That is decided through invariants:
the squared pairwise determinants together with the products
``det(vi, vj) det(vj, vk) det(vk, vi)`` around each triangle.  These are
insensitive to vertex signs and determine the configuration up to the action.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .chain import QChain, boundary, fundamental_cycle
from .coloring import ArcColoring, ShadowColoring, is_reducible, shadow_coloring
from .diagram import LinkDiagram, RegionStructure, build_regions
from .errors import DegeneracyError, ReducibleColoringError
from .quandle import (
    DEFAULT_TOL,
    DEGENERACY_TOL,
    ProjVector,
    det,
    is_degenerate_pair,
    qmul,
    random_projvector,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Simplex:
    sign: int
    vertices: tuple[ProjVector, ...]

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def signature(self) -> np.ndarray:
        v = self.vertices
        n = len(v)
        d = {(i, j): det(v[i], v[j]) for i in range(n) for j in range(i + 1, n)}
        sig = [d[k] ** 2 for k in sorted(d)]
        sig += [d[i, j] * d[j, k] * d[i, k] for i, j, k in itertools.combinations(range(n), 3)]
        return np.array(sig, dtype=complex)

    def faces(self) -> list["Simplex"]:
        v = self.vertices
        return [Simplex(self.sign * (-1) ** i, v[:i] + v[i + 1:]) for i in range(len(v))]

    def to_json(self) -> dict:
        return {"sign": self.sign, "vertices": [x.to_json() for x in self.vertices]}

    @classmethod
    def from_json(cls, data: dict) -> "Simplex":
        return cls(int(data["sign"]), tuple(ProjVector.from_json(x) for x in data["vertices"]))


SimpTet = Simplex


def is_nondegenerate(t: Simplex, tol: float = DEGENERACY_TOL) -> bool:
    """All vertices are distinct points of CP^1 (scale-invariant test)."""
    return not any(is_degenerate_pair(a, b, tol) for a, b in itertools.combinations(t.vertices, 2))


def _close(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    scale = np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
    return bool(np.all(np.abs(a - b) <= tol * scale))


def canonical_terms(simplices: Iterable[Simplex],
                    tol: float = DEFAULT_TOL) -> list[tuple[int, Simplex, np.ndarray]]:
    """Merge simplices with matching invariants; returns ``(coefficient, representative, signature)``."""
    merged: list[list] = []
    for s in simplices:
        sig = s.signature()
        for slot in merged:
            if _close(slot[2], sig, tol):
                slot[0] += s.sign
                break
        else:
            merged.append([s.sign, s, sig])
    return [(c, s, sig) for c, s, sig in merged if c != 0]


class SimpChain:
    """A list of signed simplices of one dimension."""

    def __init__(self, simplices: Iterable[Simplex] = (), dim: int | None = None):
        self.simplices = [s for s in simplices if s.sign != 0]
        dims = {s.dim for s in self.simplices}
        if len(dims) > 1:
            raise ValueError(f"mixed dimensions {sorted(dims)}")
        self.dim = dims.pop() if dims else dim

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    def __add__(self, other: "SimpChain") -> "SimpChain":
        return SimpChain(self.simplices + other.simplices, self.dim or other.dim)

    def __neg__(self) -> "SimpChain":
        return SimpChain([Simplex(-s.sign, s.vertices) for s in self.simplices], self.dim)

    def __sub__(self, other: "SimpChain") -> "SimpChain":
        return self + (-other)

    def boundary(self) -> "SimpChain":
        return SimpChain([f for s in self.simplices for f in s.faces()],
                         None if self.dim is None else self.dim - 1)

    def canonical(self, tol: float = DEFAULT_TOL) -> "SimpChain":
        terms = canonical_terms(self.simplices, tol)
        out = []
        for c, s, _ in terms:
            out.extend([Simplex(1 if c > 0 else -1, s.vertices)] * abs(c))
        return SimpChain(out, self.dim)

    def mass(self, tol: float = DEFAULT_TOL) -> int:
        return sum(abs(c) for c, _, _ in canonical_terms(self.simplices, tol))

    def is_nondegenerate(self, tol: float = DEGENERACY_TOL) -> bool:
        return all(is_nondegenerate(s, tol) for s in self.simplices)

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.simplices]

    @classmethod
    def from_json(cls, data: list[dict]) -> "SimpChain":
        return cls([Simplex.from_json(s) for s in data])

    def __repr__(self):
        return f"SimpChain(dim={self.dim}, simplices={len(self.simplices)})"


SimpChain3 = SimpChain


def _tets(sign: int, rows) -> list[Simplex]:
    return [Simplex(sign * s, tuple(vs)) for s, vs in rows]


def phi_two(p: ProjVector, c: QChain) -> SimpChain:
    """``(p,r,x,y) - (p,r*x,x,y) - (p,r*y,x*y,y) + (p,r*(xy),x*y,y)`` per generator."""
    if c.degree != 2:
        raise ValueError("phi_two needs a degree-2 chain")
    out = []
    for k, g in c:
        r, (x, y) = g.r, g.xs
        rx, ry, xy = qmul(r, x), qmul(r, y), qmul(x, y)
        out += _tets(k, [(1, (p, r, x, y)), (-1, (p, rx, x, y)),
                         (-1, (p, ry, xy, y)), (1, (p, qmul(rx, y), xy, y))])
    return SimpChain(out, 3)


def phi_alt(p: ProjVector, c: QChain) -> SimpChain:
    """Retriangulated image, homologous to :func:`phi_two`.

    ``(p,r*x,r,x) - (p,r*x,r,y) - (p,r*(xy),r*y,x*y) + (p,r*(xy),r*y,y)``.
    Generators with ``x = y`` give nothing: the terms cancel in pairs.
    """
    if c.degree != 2:
        raise ValueError("phi_alt needs a degree-2 chain")
    out = []
    for k, g in c:
        if g.is_degenerate():
            continue
        r, (x, y) = g.r, g.xs
        rx, ry = qmul(r, x), qmul(r, y)
        rxy = qmul(rx, y)
        out += _tets(k, [(1, (p, rx, r, x)), (-1, (p, rx, r, y)),
                         (-1, (p, rxy, ry, qmul(x, y))), (1, (p, rxy, ry, y))])
    return SimpChain(out, 3)


def phi_general(p: ProjVector, c: QChain) -> SimpChain:
    """``sum_iota (-1)^|iota| (p, r(iota), x(iota,1), ..., x(iota,n))`` for n <= 3.

    Degree 0 (``r (x) ()`` maps to the edge ``(p, r)``) is accepted so that
    boundaries of degree-1 chains can be pushed forward.
    """
    n = c.degree
    if n not in (0, 1, 2, 3):
        raise ValueError(f"phi_general supports degrees 0..3, got {n}")
    out = []
    for k, g in c:
        for iota in itertools.product((0, 1), repeat=n):
            r = g.r
            for xi, e in zip(g.xs, iota):
                if e:
                    r = qmul(r, xi)
            xs = []
            for i, xi in enumerate(g.xs):
                for xj, e in zip(g.xs[i + 1:], iota[i + 1:]):
                    if e:
                        xi = qmul(xi, xj)
                xs.append(xi)
            out.append(Simplex(k * (-1) ** sum(iota), (p, r, *xs)))
    return SimpChain(out, n + 1)


@dataclass
class ClosedReport:
    ok: bool
    n_faces: int
    unmatched: list[tuple[int, Simplex]] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def check_closed(c: SimpChain, tol: float = DEFAULT_TOL) -> ClosedReport:
    """True when the faces of ``c`` cancel in pairs up to the SL(2, C) action."""
    faces = [f for s in c for f in s.faces()]
    left = canonical_terms(faces, tol)
    return ClosedReport(not left, len(faces), [(k, s) for k, s, _ in left])


@dataclass
class Lift:
    chain: SimpChain
    p: ProjVector
    base_color: ProjVector
    shadow: ShadowColoring
    cycle: QChain
    attempts: int


def lift_psi(d: LinkDiagram, S: ShadowColoring | ArcColoring, rng: np.random.Generator,
             max_attempts: int = 50, regions: RegionStructure | None = None,
             tol: float = DEGENERACY_TOL) -> Lift:
    """A nondegenerate simplicial cycle representing the image of C(S).

    The first attempt keeps the region coloring of ``S`` (if it has one);
    later attempts redraw the region base color as well as ``p``.
    """
    regions = regions or build_regions(d)
    A = dict(S.arcs) if isinstance(S, ShadowColoring) else dict(S)
    reducible = is_reducible(A)
    current = S if isinstance(S, ShadowColoring) and S.regions else None
    for attempt in range(1, max_attempts + 1):
        if current is None:
            current = shadow_coloring(d, A, random_projvector(rng), regions=regions)
        p = random_projvector(rng)
        cycle = fundamental_cycle(d, current, regions)
        chain = phi_alt(p, cycle)
        if len(chain) and chain.is_nondegenerate(tol):
            base = current.regions[current.base_region if current.base_region is not None
                                   else regions.outer]
            return Lift(chain, p, base, current, cycle, attempt)
        log.debug("lift attempt %d degenerate", attempt)
        current = None
    if reducible:
        raise ReducibleColoringError(
            f"reducible coloring: degenerate after max attempts ({max_attempts})")
    raise DegeneracyError(f"degenerate after max attempts ({max_attempts})")


def chain_map_residual(c: QChain, p: ProjVector, tol: float = DEFAULT_TOL) -> int:
    """Coefficient mass of ``d phi(c) + phi(d c)`` after canonicalisation.

    With the rack boundary ``sum_i (-1)^i`` over ``i = 1..n`` and the simplicial
    boundary ``sum_i (-1)^i`` over ``i = 0..n+1``, deleting ``x_i`` (vertex
    ``i + 1`` of the simplex) picks up one extra sign, so ``phi``
    anticommutes with the boundaries.  Homology is unaffected.
    """
    lhs = phi_general(p, c).boundary()
    rhs = phi_general(p, boundary(c, quandle=False))
    return (lhs + rhs).mass(tol)
