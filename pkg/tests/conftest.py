import numpy as np
import pytest

from graph_atlas import connected_graphs_up_to_iso


@pytest.fixture(scope="session")
def small_atlas():
    """Every connected graph up to isomorphism, for 2..7 nodes."""
    return {n: connected_graphs_up_to_iso(n) for n in range(2, 8)}


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
