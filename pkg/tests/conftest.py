import numpy as np
import pytest


def feasible_spectrum(rng: np.random.Generator, n: int, cap: float) -> np.ndarray:
    """Random spectrum with p_max <= cap, blending toward uniform when needed."""
    p = rng.random(n)
    p /= p.sum()
    if p.max() > cap:
        t = (p.max() - cap) / (p.max() - 1.0 / n)
        p = (1 - t) * p + t / n
    return p


def random_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260808)
