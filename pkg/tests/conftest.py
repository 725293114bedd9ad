import pytest
from pathlib import Path

import sympy as sp

from micover.tools.utils.config import Component, Configuration, Stratum
from micover.tools.utils.reader import read_center, read_configuration
from micover.tools.utils.ring import L


@pytest.fixture
def test_data_dir():
    return Path(__file__).parent / "data"


@pytest.fixture
def data_file(test_data_dir):
    def _path(name: str) -> str:
        path = test_data_dir / name
        if not path.exists():
            pytest.skip(f"Test data file not found: {path}")
        return str(path)
    return _path


@pytest.fixture
def load_config(data_file):
    return lambda name: read_configuration(data_file(name))


@pytest.fixture
def load_center(data_file):
    return lambda name: read_center(data_file(name))


def poly(expr) -> sp.Poly:
    return sp.Poly(expr, L, domain=sp.ZZ)


def coordinate_config(multiplicities: list[int]) -> Configuration:
    """Coordinate hyperplanes of C^n with the given multiplicities."""
    n = len(multiplicities)
    ids = [str(i) for i in range(1, n + 1)]
    strata = []
    for mask in range(1, 2 ** n):
        key = frozenset(ids[b] for b in range(n) if mask >> b & 1)
        depth = n - len(key)
        strata.append(Stratum(key, poly((L - 1) ** depth), 1 if depth == 0 else 0, frozenset(ids)))
    return Configuration.build(n, [Component(c, m) for c, m in zip(ids, multiplicities)], strata)
