import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from singlestrip.generators import icosphere, octahedron, tetrahedron, torus


@pytest.fixture
def tetra():
    return tetrahedron()


@pytest.fixture
def octa():
    return octahedron()


@pytest.fixture
def torus400():
    return torus(20, 10)


@pytest.fixture
def ico():
    return icosphere(0)
