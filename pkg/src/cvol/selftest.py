"""Quick property suites behind ``cvol selftest``."""

from __future__ import annotations

import cmath
import math
import time
from typing import Callable

import numpy as np

from .bloch import bloch_wigner, diff_mod_pi2, five_term_residual, li2
from .chain import QChain, boundary, gen
from .coloring import monochromatic_coloring
from .diagram import build_diagram, parse_pd
from .errors import CvolError, DegeneracyError
from .pipeline import Check, compute_complex_volume, complex_volume
from .quandle import ProjVector, approx_equal, qmul, qmul_inv, random_projvector
from .simplicial import chain_map_residual

FIGURE_EIGHT = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"


def _quandle_axioms(rng, n=1000) -> Check:
    worst = 0.0
    for _ in range(n):
        x, y, z = (random_projvector(rng) for _ in range(3))
        worst = max(worst,
                    0.0 if approx_equal(qmul(x, x), x, 1e-12) else 1.0,
                    0.0 if approx_equal(qmul_inv(qmul(x, y), y), x, 1e-12) else 1.0,
                    0.0 if approx_equal(qmul(qmul(x, y), z), qmul(qmul(x, z), qmul(y, z)), 1e-12) else 1.0)
    return Check("quandle axioms", worst == 0.0, f"{n} samples")


def _dd_zero(rng, n=100) -> Check:
    bad = 0
    for _ in range(n):
        c = QChain([(1, gen(*(random_projvector(rng) for _ in range(4))))], 3)
        bad += boundary(boundary(c)).canonical().mass()
    return Check("boundary of boundary vanishes", bad == 0, f"{n} generators")


def _chain_map(rng, n=30) -> Check:
    bad = 0
    for _ in range(n):
        c = QChain([(1, gen(*(random_projvector(rng) for _ in range(3))))], 2)
        bad += chain_map_residual(c, random_projvector(rng), 1e-8)
    return Check("chain map anticommutes with boundaries", bad == 0, f"{n} generators")


def _li2_values(rng) -> Check:
    pi2 = math.pi ** 2
    errs = [abs(li2(1) - pi2 / 6), abs(li2(0.5) - (pi2 / 12 - math.log(2) ** 2 / 2)),
            abs(li2(-1) + pi2 / 12)]
    for _ in range(100):
        z = complex(*rng.normal(size=2))
        errs.append(abs(li2(z) + li2(1 - z) - (pi2 / 6 - cmath.log(z) * cmath.log(1 - z))))
    return Check("dilogarithm reference values", max(errs) < 1e-12, f"max error {max(errs):.1e}")


def _five_term(rng, n=100) -> Check:
    worst = max(five_term_residual(*(random_projvector(rng) for _ in range(5))) for _ in range(n))
    return Check("lifted five-term relation", worst < 1e-8, f"max residual {worst:.1e}")


def _figure_eight(rng) -> Check:
    r = complex_volume(FIGURE_EIGHT)
    expect = 2 * bloch_wigner(cmath.exp(1j * math.pi / 3))
    other = compute_complex_volume(FIGURE_EIGHT, r.shadow.arcs, seed=int(rng.integers(1 << 30)))
    ok = abs(r.volume - expect) < 1e-9 and abs(r.cs) < 1e-8 and diff_mod_pi2(r.raw, other.raw) < 1e-9
    return Check("figure-eight complex volume", ok, f"volume {r.volume:.13f}, cs {r.cs:.1e}")


def _reducible(rng) -> Check:
    d = build_diagram(parse_pd(FIGURE_EIGHT))
    try:
        compute_complex_volume(d, monochromatic_coloring(d, ProjVector(1, 2)))
    except DegeneracyError as exc:
        return Check("reducible coloring is rejected", True, str(exc))
    return Check("reducible coloring is rejected", False, "a number was returned")


SUITES: list[Callable[[np.random.Generator], Check]] = [
    _quandle_axioms, _dd_zero, _chain_map, _li2_values, _five_term, _figure_eight, _reducible,
]


def run_selftest(seed: int = 0) -> list[tuple[Check, float]]:
    rng = np.random.default_rng(seed)
    out = []
    for suite in SUITES:
        t0 = time.perf_counter()
        try:
            check = suite(rng)
        except CvolError as exc:
            check = Check(suite.__name__.strip("_").replace("_", " "), False, f"{type(exc).__name__}: {exc}")
        out.append((check, time.perf_counter() - t0))
    return out
