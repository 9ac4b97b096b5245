"""Complex volume of hyperbolic links from parabolic quandle colorings of a PD diagram."""

from .bloch import BlochElement, Flattening, evaluate, li2, rogers_R, sigma_hat
from .chain import QChain, boundary, fundamental_cycle, is_cycle
from .coloring import ShadowColoring, shadow_coloring, solve_colorings
from .diagram import LinkDiagram, PdCode, build_diagram, build_regions, parse_pd
from .errors import (
    ColoringError,
    CvolError,
    DegeneracyError,
    NumericalError,
    PDError,
    PDSyntaxError,
    ReducibleColoringError,
    SolverError,
)
from .pipeline import (
    ComplexVolumeResult,
    Tolerances,
    complex_volume,
    compute_all,
    compute_complex_volume,
    verify,
)
from .quandle import ProjVector, qmul, qmul_inv

__version__ = "0.1.0"

__all__ = [
    "BlochElement",
    "ColoringError",
    "ComplexVolumeResult",
    "CvolError",
    "DegeneracyError",
    "Flattening",
    "LinkDiagram",
    "NumericalError",
    "PDError",
    "PDSyntaxError",
    "PdCode",
    "ProjVector",
    "QChain",
    "ReducibleColoringError",
    "ShadowColoring",
    "SolverError",
    "Tolerances",
    "boundary",
    "build_diagram",
    "build_regions",
    "complex_volume",
    "compute_all",
    "compute_complex_volume",
    "evaluate",
    "fundamental_cycle",
    "is_cycle",
    "li2",
    "parse_pd",
    "qmul",
    "qmul_inv",
    "rogers_R",
    "shadow_coloring",
    "sigma_hat",
    "solve_colorings",
    "verify",
]
