import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

import oracles
from cvol.diagram import parse_pd
from cvol.errors import SolverError
from cvol.estimator import ComplexVolumeTransformer


def test_params_and_clone():
    est = ComplexVolumeTransformer(seed=3, attempts=20)
    assert est.get_params() == {"seed": 3, "attempts": 20, "tol": None, "on_error": "raise"}
    c = clone(est)
    assert c.get_params() == est.get_params() and c is not est


def test_transform():
    X = [oracles.PD_41, parse_pd(oracles.PD_41_ALT)]
    out = ComplexVolumeTransformer().fit_transform(X)
    assert out.shape == (2, 2)
    np.testing.assert_allclose(out[:, 0], oracles.VOL41, atol=1e-9)
    np.testing.assert_allclose(out[:, 1], 0, atol=1e-8)


def test_column_input_in_a_pipeline():
    pipe = make_pipeline(ComplexVolumeTransformer(), FunctionTransformer(lambda a: a[:, :1]))
    out = pipe.fit_transform(np.array([[oracles.PD_41]], dtype=object))
    assert out.shape == (1, 1)
    assert abs(out[0, 0] - oracles.VOL41) < 1e-9


def test_errors():
    est = ComplexVolumeTransformer()
    with pytest.raises(NotFittedError):
        est.transform([oracles.PD_41])
    with pytest.raises(ValueError):
        ComplexVolumeTransformer(on_error="ignore").fit([])
    with pytest.raises(ValueError):
        ComplexVolumeTransformer(attempts=0).fit([])
    with pytest.raises(ValueError):
        est.fit([]).transform(oracles.PD_41)
    with pytest.raises(SolverError):
        est.transform([oracles.PD_KINK])
    out = ComplexVolumeTransformer(on_error="nan").fit_transform([oracles.PD_KINK])
    assert np.isnan(out).all()


def test_feature_names():
    est = ComplexVolumeTransformer().fit([])
    assert list(est.get_feature_names_out()) == ["volume", "cs"]
