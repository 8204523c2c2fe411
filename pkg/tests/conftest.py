import numpy as np
import pytest


def rel_maxabs(got, want, ref=None) -> float:
    """Max absolute difference scaled by the reference Frobenius norm."""
    if ref is None:
        ref = want
    scale = max(np.linalg.norm(np.asarray(ref).ravel()), np.finfo(np.float64).tiny)
    return float(np.abs(np.asarray(got) - np.asarray(want)).max() / scale)


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
