"""scikit-learn wrapper: PD codes in, ``[volume, cs]`` rows out.

There is nothing to learn, so ``fit`` only validates parameters; the class
exists so the computation can sit inside a ``Pipeline`` or be cloned and
grid-searched over its numerical settings like any other transformer.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .diagram import PdCode
from .errors import CvolError
from .pipeline import complex_volume, with_tolerance


class ComplexVolumeTransformer(TransformerMixin, BaseEstimator):
    """Map each PD code to its complex volume.

    Parameters
    ----------
    seed : int
        Seed for the coloring solver and the random base point.
    attempts : int
        Solver and lift attempts per link.
    tol : float or None
        Scales every tolerance together; ``None`` keeps the defaults.
    on_error : {"raise", "nan"}
        What to do when a link has no usable coloring.
    """

    def __init__(self, seed: int = 0, attempts: int = 50, tol: float | None = None,
                 on_error: str = "raise"):
        self.seed = seed
        self.attempts = attempts
        self.tol = tol
        self.on_error = on_error

    def fit(self, X, y=None):
        if self.on_error not in ("raise", "nan"):
            raise ValueError(f"on_error must be 'raise' or 'nan', got {self.on_error!r}")
        if int(self.attempts) < 1:
            raise ValueError("attempts must be positive")
        self.tolerances_ = with_tolerance(self.tol)
        self.n_features_in_ = 1
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "tolerances_")
        items = _as_items(X)
        out = np.empty((len(items), 2))
        for k, pd in enumerate(items):
            try:
                r = complex_volume(pd, seed=self.seed, attempts=self.attempts, tol=self.tolerances_)
                out[k] = r.volume, r.cs
            except CvolError:
                if self.on_error == "raise":
                    raise
                out[k] = np.nan
        return out

    def get_feature_names_out(self, input_features=None):
        return np.array(["volume", "cs"], dtype=object)


def _as_items(X) -> list:
    if isinstance(X, (str, PdCode)):
        raise ValueError("expected a sequence of PD codes, got a single one")
    arr = list(X)
    items = []
    for x in arr:
        # a one-column 2-D input arrives as rows of length 1
        if isinstance(x, (list, tuple, np.ndarray)) and len(x) == 1:
            x = x[0]
        if not isinstance(x, (str, PdCode)):
            raise ValueError(f"cannot read a PD code from {type(x).__name__}")
        items.append(x)
    return items
