import pytest

from kvnosc import verification


@pytest.fixture(scope="session")
def sweep_solutions():
    """The six preset profiles solved once on [0, 10] at step 1e-3."""
    return verification.solve_sweep()
