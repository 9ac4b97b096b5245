"""End-to-end computation: diagram -> coloring -> C(S) -> simplicial lift -> flattenings -> R.

The result is ``i (Vol + i CS)`` modulo pi^2.  ``volume`` is its imaginary
part and ``cs`` is minus its real part, reduced into ``(-pi^2/2, pi^2/2]``.
CS conventions differ between references by sign and by factors of 2 pi^2;
this module reports exactly ``-Re`` of the evaluated sum.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .bloch import INTEGRALITY_TOL, BlochElement, diff_mod_pi2, evaluate, reduce_mod_pi2, sigma_hat
from .chain import QChain, fundamental_cycle, is_cycle
from .coloring import (
    ArcColoring,
    ShadowColoring,
    check_arc_coloring,
    check_region_coloring,
    is_reducible,
    shadow_coloring,
    solve_colorings,
)
from .diagram import LinkDiagram, PdCode, build_diagram, build_regions, parse_pd
from .errors import ColoringError, NumericalError, ReducibleColoringError, SolverError
from .quandle import DEFAULT_TOL, DEGENERACY_TOL, DetConvention, ProjVector, random_projvector
from .simplicial import SimpChain, check_closed, lift_psi, phi_alt

log = logging.getLogger(__name__)

PI2 = math.pi ** 2


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds; :meth:`scaled` moves them together."""

    equal: float = DEFAULT_TOL          # approximate equality of quandle elements and chains
    coloring: float = DEFAULT_TOL       # crossing-rule residual accepted for an input coloring
    degeneracy: float = DEGENERACY_TOL  # normalized |det| below which two vertices coincide
    integrality: float = INTEGRALITY_TOL
    volume_check: float = DEFAULT_TOL   # Rogers sum versus Bloch-Wigner sum

    @classmethod
    def scaled(cls, tol: float) -> "Tolerances":
        if not tol > 0:
            raise ValueError(f"tolerance must be positive, got {tol}")
        f = tol / DEFAULT_TOL
        base = cls()
        return cls(base.equal * f, base.coloring * f, base.degeneracy * f,
                   min(0.25, base.integrality * f), base.volume_check * f)


@dataclass
class ComplexVolumeResult:
    volume: float
    cs: float
    raw: complex
    element: BlochElement
    provenance: dict[str, Any] = field(default_factory=dict)
    pd: PdCode | None = None
    shadow: ShadowColoring | None = None
    cycle: QChain | None = None
    chain: SimpChain | None = None

    @property
    def tetrahedra(self) -> list[dict]:
        return self.element.to_json()

    def to_json(self) -> dict:
        out = {
            "volume": self.volume,
            "cs": self.cs,
            "raw": [self.raw.real, self.raw.imag],
            "tetrahedra": self.tetrahedra,
            "provenance": self.provenance,
        }
        if self.pd is not None:
            out["pd"] = self.pd.to_json()
        if self.shadow is not None:
            out["coloring"] = self.shadow.to_json()
        if self.cycle is not None:
            out["cycle"] = self.cycle.to_json()
        if self.chain is not None:
            out["simplices"] = self.chain.to_json()
        return out


def _as_diagram(d: LinkDiagram | PdCode | str) -> LinkDiagram:
    if isinstance(d, LinkDiagram):
        return d
    if isinstance(d, str):
        d = parse_pd(d)
    return build_diagram(d)


def _arcs(A: ArcColoring | ShadowColoring) -> ArcColoring:
    return dict(A.arcs) if isinstance(A, ShadowColoring) else dict(A)


def compute_complex_volume(d: LinkDiagram | PdCode | str, A: ArcColoring | ShadowColoring,
                           seed: int = 0, tol: Tolerances | None = None,
                           max_attempts: int = 50,
                           convention: DetConvention | None = None) -> ComplexVolumeResult:
    """Complex volume from a parabolic arc coloring.

    A random region base color and base point are drawn from ``seed``; a
    shadow coloring passed in keeps its region colors on the first attempt.
    Every intermediate object is checked and a failing check raises with
    the stage named in the message.
    """
    tol = tol or Tolerances()
    d = _as_diagram(d)
    arcs = _arcs(A)
    rep = check_arc_coloring(d, arcs, tol.coloring)
    if not rep.ok:
        raise ColoringError(f"arc coloring violates the crossing rule at crossings "
                            f"{rep.failing} (max residual {rep.max_residual:.3g})")
    if is_reducible(arcs, tol.degeneracy):
        raise ReducibleColoringError(
            "reducible/degenerate coloring: all arcs share one fixed point, "
            "so every tetrahedron is degenerate")
    regions = build_regions(d)
    rng = np.random.default_rng(seed)
    if isinstance(A, ShadowColoring) and A.regions:
        if check_region_coloring(d, arcs, A.regions, regions) >= tol.coloring:
            raise ColoringError("region coloring violates the region rule")
        S = A
    else:
        S = shadow_coloring(d, arcs, random_projvector(rng), regions=regions)
    lift = lift_psi(d, S, rng, max_attempts=max_attempts, regions=regions, tol=tol.degeneracy)

    cyc = is_cycle(lift.cycle, tol.equal)
    if not cyc.ok:
        raise NumericalError(f"fundamental cycle check failed (leftover mass {cyc.mass})")
    closed = check_closed(lift.chain, tol.equal)
    if not closed.ok:
        raise NumericalError(f"simplicial chain is not closed ({len(closed.unmatched)} unmatched faces)")

    element = BlochElement([sigma_hat(t.vertices, t.sign, convention, tol.integrality)
                            for t in lift.chain])
    raw = evaluate(element)
    bw = element.volume()
    if abs(bw - raw.imag) > tol.volume_check * max(1.0, abs(bw)):
        raise NumericalError(f"volume cross-check failed: R gives {raw.imag!r}, D gives {bw!r}")
    volume = raw.imag
    cs = reduce_mod_pi2(-raw.real).real + 0.0
    provenance = {
        "seed": seed,
        "p": lift.p.to_json(),
        "base_region": lift.shadow.base_region,
        "base_color": lift.base_color.to_json(),
        "attempts": lift.attempts,
        "residuals": {
            "coloring": rep.max_residual,
            "region": check_region_coloring(d, arcs, lift.shadow.regions, regions),
            "cycle_mass": cyc.mass,
            "unmatched_faces": len(closed.unmatched),
            "volume_check": abs(bw - raw.imag),
        },
    }
    return ComplexVolumeResult(volume, cs, raw, element, provenance,
                               d.pd, lift.shadow, lift.cycle, lift.chain)


def solve(d: LinkDiagram | PdCode | str, seed: int = 0, attempts: int = 50):
    """Coloring classes found by the solver (the reducible one last)."""
    return solve_colorings(_as_diagram(d), seed=seed, max_attempts=attempts)


def compute_all(d: LinkDiagram | PdCode | str, seed: int = 0, attempts: int = 50,
                tol: Tolerances | None = None) -> list[ComplexVolumeResult]:
    """Results for every irreducible class found, largest volume first."""
    d = _as_diagram(d)
    sols = [s for s in solve_colorings(d, seed=seed, max_attempts=attempts) if not s.reducible]
    if not sols:
        raise SolverError("no irreducible parabolic coloring found")
    results = []
    for s in sols:
        r = compute_complex_volume(d, s.coloring, seed=seed, tol=tol, max_attempts=attempts)
        r.provenance["solver_attempt"] = s.attempt
        r.provenance["solver_residual"] = s.residual
        results.append(r)
    results.sort(key=lambda r: -r.volume)
    return results


def complex_volume(d: LinkDiagram | PdCode | str, seed: int = 0, attempts: int = 50,
                   tol: Tolerances | None = None) -> ComplexVolumeResult:
    """Solve for colorings and return the result with the largest volume."""
    return compute_all(d, seed=seed, attempts=attempts, tol=tol)[0]


# --- replay ---


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerifyReport:
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [vars(c) for c in self.checks]}


def result_from_json(data: dict) -> ComplexVolumeResult:
    raw = complex(*data["raw"])
    pd = PdCode.from_json(data["pd"]) if "pd" in data else None
    return ComplexVolumeResult(
        data["volume"], data["cs"], raw, BlochElement.from_json(data["tetrahedra"]),
        data.get("provenance", {}), pd,
        ShadowColoring.from_json(data["coloring"]) if "coloring" in data else None,
        QChain.from_json(data["cycle"]) if "cycle" in data else None,
        SimpChain.from_json(data["simplices"]) if "simplices" in data else None)


def verify(data: dict | ComplexVolumeResult, tol: Tolerances | None = None,
           recheck_seed: int | None = None) -> VerifyReport:
    """Re-run every check on a saved computation without solving again."""
    tol = tol or Tolerances()
    res = result_from_json(data) if isinstance(data, dict) else data
    checks: list[Check] = []

    def add(name, ok, detail=""):
        checks.append(Check(name, bool(ok), detail))

    value = evaluate(res.element)
    add("raw value", diff_mod_pi2(value, res.raw) < tol.equal * max(1.0, abs(value)),
        f"recomputed {value:.12g}")
    add("volume/cs reporting", abs(res.volume - value.imag) < tol.equal * max(1.0, abs(value))
        and diff_mod_pi2(-res.cs, value.real) < tol.equal * max(1.0, abs(value)))
    bw = res.element.volume()
    add("Bloch-Wigner volume", abs(bw - value.imag) < tol.volume_check * max(1.0, abs(bw)),
        f"sum D = {bw:.12g}")
    if res.pd is None or res.shadow is None or res.chain is None or res.cycle is None:
        add("artifact complete", False, "missing pd, coloring, cycle or simplices")
        return VerifyReport(checks)

    d = build_diagram(res.pd)
    regions = build_regions(d)
    S = res.shadow
    rep = check_arc_coloring(d, S.arcs, tol.coloring)
    add("arc coloring", rep.ok, f"max residual {rep.max_residual:.3g}")
    rr = check_region_coloring(d, S.arcs, S.regions, regions)
    add("region coloring", rr < tol.coloring, f"max residual {rr:.3g}")
    add("irreducible", not is_reducible(S.arcs, tol.degeneracy))
    C = fundamental_cycle(d, S, regions, tol.equal)
    add("stored cycle matches C(S)", (C - res.cycle).is_zero(tol.equal))
    cyc = is_cycle(res.cycle, tol.equal)
    add("cycle", cyc.ok, f"leftover mass {cyc.mass}")
    p = ProjVector.from_json(res.provenance["p"])
    lifted = phi_alt(p, res.cycle)
    add("stored simplices match the lift", (lifted - res.chain).mass(tol.equal) == 0)
    add("nondegenerate", res.chain.is_nondegenerate(tol.degeneracy))
    closed = check_closed(res.chain, tol.equal)
    add("closed", closed.ok, f"{len(closed.unmatched)} unmatched faces")
    try:
        fl = [sigma_hat(t.vertices, t.sign) for t in res.chain]
        same = len(fl) == len(res.element) and all(
            s == s2 and f.p == f2.p and f.q == f2.q and abs(f.z - f2.z) <= tol.equal * max(1.0, abs(f.z))
            for (s, f), (s2, f2) in zip(fl, res.element))
        add("flattenings match the simplices", same)
    except (ArithmeticError, ValueError) as exc:
        add("flattenings match the simplices", False, str(exc))
    seed = recheck_seed if recheck_seed is not None else int(res.provenance.get("seed", 0)) + 1
    try:
        other = compute_complex_volume(d, S.arcs, seed=seed, tol=tol)
        gap = diff_mod_pi2(other.raw, value)
        add("independent of base point and region colors", gap < tol.equal * max(1.0, abs(value)),
            f"seed {seed} differs by {gap:.2e}")
    except Exception as exc:  # report, do not abort the replay
        add("independent of base point and region colors", False, str(exc))
    return VerifyReport(checks)


def with_tolerance(tol: float | None) -> Tolerances:
    return Tolerances() if tol is None else Tolerances.scaled(tol)


__all__ = [
    "Check",
    "ComplexVolumeResult",
    "Tolerances",
    "VerifyReport",
    "complex_volume",
    "compute_all",
    "compute_complex_volume",
    "result_from_json",
    "solve",
    "verify",
    "with_tolerance",
]
