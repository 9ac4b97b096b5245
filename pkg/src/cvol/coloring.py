"""Arc and region colorings by the parabolic quandle, and a solver for them.

Crossing rule: with over-arc color ``y`` and incoming under color ``x`` the
outgoing under color is ``x * y`` at a positive crossing and ``x *^-1 y`` at
a negative one.

Region rule: crossing a directed edge colored ``x`` from its left side to its
right side acts by ``* x``.  At every crossing the corner to the left of both
strands (:func:`cvol.diagram.source_corner`) then carries the color ``r``
whose neighbours are ``r * x``, ``r * y`` and ``r * x * y``.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .diagram import LinkDiagram, RegionStructure, build_regions
from .errors import ColoringError
from .quandle import (
    DEFAULT_TOL,
    ProjVector,
    det,
    inverse_element,
    proj_distance,
    qmul,
    qmul_inv,
    qpow,
)

log = logging.getLogger(__name__)

ArcColoring = dict[int, ProjVector]
RegionColoring = dict[int, ProjVector]


@dataclass
class ShadowColoring:
    arcs: ArcColoring
    regions: RegionColoring
    base_region: int | None = None

    def to_json(self) -> dict:
        out = {"arcs": {str(k): v.to_json() for k, v in sorted(self.arcs.items())}}
        if self.regions:
            out["regions"] = {str(k): v.to_json() for k, v in sorted(self.regions.items())}
        if self.base_region is not None:
            out["base_region"] = self.base_region
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ShadowColoring":
        arcs = {int(k): ProjVector.from_json(v) for k, v in data["arcs"].items()}
        regions = {int(k): ProjVector.from_json(v) for k, v in data.get("regions", {}).items()}
        return cls(arcs, regions, data.get("base_region"))


def arc_coloring_to_json(A: ArcColoring) -> dict:
    return {"arcs": {str(k): v.to_json() for k, v in sorted(A.items())}}


@dataclass
class ResidualReport:
    residuals: list[float]
    max_residual: float
    failing: list[int]
    tol: float

    @property
    def ok(self) -> bool:
        return not self.failing


def _require_arcs(d: LinkDiagram, A: ArcColoring):
    missing = [k for k in range(d.n_arcs) if k not in A]
    if missing:
        raise ColoringError(f"arc coloring misses arcs {missing}")


def crossing_output(d: LinkDiagram, A: ArcColoring, i: int) -> ProjVector:
    x = d.crossings[i]
    return qpow(A[x.under_in_arc], A[x.over_arc], x.sign)


def check_arc_coloring(d: LinkDiagram, A: ArcColoring, tol: float = DEFAULT_TOL) -> ResidualReport:
    """Per-crossing residual of the crossing rule, measured modulo sign."""
    _require_arcs(d, A)
    res = []
    for x in d.crossings:
        res.append(proj_distance(A[x.under_out_arc], crossing_output(d, A, x.index)))
    failing = [i for i, r in enumerate(res) if r >= tol]
    return ResidualReport(res, max(res, default=0.0), failing, tol)


def is_reducible(A: ArcColoring, tol: float = 1e-8) -> bool:
    """All colors share one point of CP^1 (the representation fixes a point)."""
    vs = list(A.values())
    ref = max(vs, key=lambda v: v.norm())
    return all(abs(det(ref, v)) < tol * ref.norm() * v.norm() for v in vs)


def monochromatic_coloring(d: LinkDiagram, x: ProjVector) -> ArcColoring:
    return {k: x for k in range(d.n_arcs)}


def propagate_regions(d: LinkDiagram, A: ArcColoring, base_color: ProjVector,
                      base_region: int | None = None, regions: RegionStructure | None = None,
                      tol: float = DEFAULT_TOL) -> RegionColoring:
    """The unique region coloring taking ``base_color`` on ``base_region``."""
    _require_arcs(d, A)
    regions = regions or build_regions(d)
    if base_region is None:
        base_region = regions.outer
    R: RegionColoring = {base_region: base_color}
    queue = deque([base_region])
    while queue:
        k = queue.popleft()
        for other, label, direction in regions.adjacency[k]:
            x = A[d.edges[label].arc]
            # direction +1: k is on the left of the edge
            c = qmul(R[k], x) if direction > 0 else qmul_inv(R[k], x)
            if other not in R:
                R[other] = c
                queue.append(other)
            elif proj_distance(R[other], c) >= tol:
                raise ColoringError(
                    f"region propagation inconsistent across edge {label} "
                    f"(residual {proj_distance(R[other], c):.3g})")
    return R


def check_region_coloring(d: LinkDiagram, A: ArcColoring, R: RegionColoring,
                          regions: RegionStructure | None = None) -> float:
    regions = regions or build_regions(d)
    worst = 0.0
    for label, e in d.edges.items():
        worst = max(worst, proj_distance(R[regions.right[label]], qmul(R[regions.left[label]], A[e.arc])))
    return worst


def shadow_coloring(d: LinkDiagram, A: ArcColoring, base_color: ProjVector,
                    base_region: int | None = None,
                    regions: RegionStructure | None = None) -> ShadowColoring:
    regions = regions or build_regions(d)
    if base_region is None:
        base_region = regions.outer
    return ShadowColoring(dict(A), propagate_regions(d, A, base_color, base_region, regions), base_region)


def conjugate_coloring(S: ShadowColoring, w: ProjVector) -> ShadowColoring:
    """Act on every color by ``* w``."""
    return ShadowColoring({k: qmul(v, w) for k, v in S.arcs.items()},
                          {k: qmul(v, w) for k, v in S.regions.items()},
                          S.base_region)


def transport_coloring(d_from: LinkDiagram, A: ArcColoring, d_to: LinkDiagram,
                       inverted_components=()) -> ArcColoring:
    """Move a coloring to a diagram sharing edge labels (reorientation, added kinks).

    Each arc of ``d_to`` takes the color of the ``d_from`` arc through one of
    its edges that ``d_from`` also has, or else through the nearest such edge
    upstream.  Colors on arcs of the listed components of ``d_from`` are
    replaced by the inverse parabolic element.
    """
    inverted = {e for k in inverted_components for e in d_from.components[k]}
    # a new edge (e.g. inside a curl) inherits from the nearest old edge upstream
    source = {}
    for comp in d_to.components:
        known = [e for e in comp if e in d_from.edges]
        if not known:
            raise ColoringError("a component of the target diagram shares no edge with the source")
        last = known[-1]
        for e in comp:
            if e in d_from.edges:
                last = e
            source[e] = last
    out = {}
    for k, arc in enumerate(d_to.arcs):
        shared = [e for e in arc if e in d_from.edges] or [source[arc[0]]]
        e = shared[0]
        v = A[d_from.edges[e].arc]
        out[k] = inverse_element(v) if e in inverted else v
    return out


# --- numerical solver ---


@dataclass
class ColoringSolution:
    coloring: ArcColoring
    residual: float
    reducible: bool
    invariants: np.ndarray = field(repr=False, default=None)
    attempt: int = -1

    def to_json(self) -> dict:
        out = arc_coloring_to_json(self.coloring)
        out.update(residual=self.residual, reducible=self.reducible)
        return out


def _gauge_arcs(d: LinkDiagram):
    for x in d.crossings:
        if x.over_arc != x.under_in_arc:
            return x.under_in_arc, x.over_arc
    return None


class _CrossingSystem:
    """Sign-invariant crossing equations ``sym2(x_out) = sym2(x_in *^e y)``.

    ``sym2(a, b) = (a^2, ab, b^2)`` identifies a vector up to sign, which
    lets Newton's method work on C^2 while the equations live on C^2 / +-.
    """

    def __init__(self, d: LinkDiagram, gauge):
        self.d = d
        self.m = d.n_arcs
        g0, g1 = gauge
        self.fixed = {2 * g0: 0.0, 2 * g0 + 1: 1.0, 2 * g1 + 1: 0.0}
        self.free = np.array([k for k in range(2 * self.m) if k not in self.fixed])
        rows = [(x.under_in_arc, x.over_arc, x.under_out_arc, x.sign) for x in d.crossings]
        self.rows = np.array(rows, dtype=int).reshape(-1, 4)

    def full(self, zfree):
        z = np.empty(2 * self.m, dtype=complex)
        z[self.free] = zfree
        for k, v in self.fixed.items():
            z[k] = v
        return z

    def residual(self, z):
        V = z.reshape(-1, 2)
        xi, yi, oi, s = self.rows.T
        x, y, o = V[xi], V[yi], V[oi]
        dd = x[:, 0] * y[:, 1] - x[:, 1] * y[:, 0]
        u = x + (s * dd)[:, None] * y
        F = np.stack([o[:, 0] ** 2 - u[:, 0] ** 2,
                      o[:, 0] * o[:, 1] - u[:, 0] * u[:, 1],
                      o[:, 1] ** 2 - u[:, 1] ** 2], axis=1)
        return F.ravel()

    def jacobian(self, z):
        V = z.reshape(-1, 2)
        n = len(self.rows)
        J = np.zeros((3 * n, 2 * self.m), dtype=complex)
        for c, (xi, yi, oi, s) in enumerate(self.rows):
            x, y, o = V[xi], V[yi], V[oi]
            dd = x[0] * y[1] - x[1] * y[0]
            u = x + s * dd * y
            du_dx = np.eye(2) + s * np.outer(y, [y[1], -y[0]])
            du_dy = s * (dd * np.eye(2) + np.outer(y, [-x[1], x[0]]))
            dS_du = np.array([[2 * u[0], 0], [u[1], u[0]], [0, 2 * u[1]]])
            dS_do = np.array([[2 * o[0], 0], [o[1], o[0]], [0, 2 * o[1]]])
            r = slice(3 * c, 3 * c + 3)
            J[r, 2 * oi:2 * oi + 2] += dS_do
            J[r, 2 * xi:2 * xi + 2] -= dS_du @ du_dx
            J[r, 2 * yi:2 * yi + 2] -= dS_du @ du_dy
        return J[:, self.free]


def _newton(system: _CrossingSystem, z0, max_iter=200, max_halvings=30, ftol=1e-15):
    zf = z0
    F = system.residual(system.full(zf))
    fn = np.linalg.norm(F)
    for _ in range(max_iter):
        if fn < ftol:
            break
        J = system.jacobian(system.full(zf))
        step, *_ = np.linalg.lstsq(J, -F, rcond=None)
        if not np.all(np.isfinite(step)):
            return None
        t = 1.0
        for _ in range(max_halvings):
            trial = zf + t * step
            Ft = system.residual(system.full(trial))
            ft = np.linalg.norm(Ft)
            if ft < fn:
                break
            t *= 0.5
        else:
            break
        zf, F, fn = trial, Ft, ft
    return system.full(zf), fn


def coloring_invariants(A: ArcColoring) -> np.ndarray:
    """``det(x_i, x_j)^2`` over arc pairs: conjugation- and sign-invariant."""
    vs = [A[k] for k in sorted(A)]
    return np.array([det(vs[i], vs[j]) ** 2 for i in range(len(vs)) for j in range(i + 1, len(vs))])


def _same_class(u: np.ndarray, v: np.ndarray, tol=1e-6) -> bool:
    scale = max(1.0, np.max(np.abs(u), initial=0.0), np.max(np.abs(v), initial=0.0))
    return bool(np.max(np.abs(u - v), initial=0.0) <= tol * scale)


def solve_colorings(d: LinkDiagram, seed: int = 0, max_attempts: int = 50,
                    accept: float = 1e-12, min_norm: float = 1e-6) -> list[ColoringSolution]:
    """Search for parabolic arc colorings, one per conjugacy class found.

    Newton's method runs on the crossing equations with the gauge fixed by
    pinning one arc to ``(0, 1)`` and the second coordinate of a neighbouring
    arc to 0.  Attempt ``k`` starts from a point drawn with seed ``(seed, k)``.
    The monochromatic coloring is always appended, flagged as reducible.
    """
    sols: list[ColoringSolution] = []
    gauge = _gauge_arcs(d)
    if gauge is not None and d.n_arcs >= 2:
        system = _CrossingSystem(d, gauge)
        for k in range(max_attempts):
            rng = np.random.default_rng([seed, k])
            scale = np.exp(rng.uniform(np.log(0.5), np.log(10.0)))
            nfree = len(system.free)
            z0 = scale * (rng.normal(size=nfree) + 1j * rng.normal(size=nfree))
            out = _newton(system, z0)
            if out is None:
                continue
            z, _ = out
            V = z.reshape(-1, 2)
            if not np.all(np.isfinite(V)):
                continue
            norms = np.linalg.norm(V, axis=1)
            if norms.min() < min_norm * max(1.0, norms.max()):
                continue
            # the equations have real coefficients: conjugates are solutions too
            for W in (V, V.conj()):
                A = {i: ProjVector(*W[i]) for i in range(d.n_arcs)}
                rep = check_arc_coloring(d, A, accept)
                if not rep.ok:
                    log.debug("attempt %d: residual %.3g rejected", k, rep.max_residual)
                    break
                inv = coloring_invariants(A)
                if any(_same_class(inv, s.invariants) for s in sols):
                    continue
                sols.append(ColoringSolution(A, rep.max_residual, is_reducible(A), inv, k))
    mono = monochromatic_coloring(d, ProjVector(0, 1))
    sols.append(ColoringSolution(mono, 0.0, True, coloring_invariants(mono), -1))
    return sols
