"""Test configuration and fixtures for incflow."""

import shutil
import tempfile
from pathlib import Path
from typing import Generator, List

import pytest

from incflow.instgen import X3CInstance, gen_x3c, random_corpus
from incflow.netcore import Instance, Network


def p2_network() -> Network:
    """Two nodes; existing s->t cap 1, potential q1 s->t cap 1, potential q2 s->t cap 2"""
    return Network.build(2, 0, 1, [(0, 1, 1, 'E'), (0, 1, 1, 'P'), (0, 1, 2, 'P')])


def diamond_network() -> Network:
    """Existing s->a, potential a->t, both unit capacity"""
    return Network.build(3, 0, 2, [(0, 1, 1, 'E'), (1, 2, 1, 'P')])


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for tests."""
    temp_path = Path(tempfile.mkdtemp())
    try:
        yield temp_path
    finally:
        shutil.rmtree(temp_path, ignore_errors=True)


@pytest.fixture
def p2() -> Network:
    return p2_network()


@pytest.fixture
def diamond() -> Network:
    return diamond_network()


@pytest.fixture
def x3c_single() -> Instance:
    """Reduction network of the exact-cover instance n = 1, sets {1,2,3}"""
    return gen_x3c(X3CInstance.parse(1, [(1, 2, 3)]))


@pytest.fixture(scope="session")
def mixed_corpus() -> List[Instance]:
    """Seeded general and layered instances with at most 8 potential arcs"""
    return random_corpus('mixed', 200, seed=11)


@pytest.fixture(scope="session")
def unit_corpus() -> List[Instance]:
    """Seeded unit-capacity instances with at most 8 potential arcs"""
    return random_corpus('unit-capacity', 200, seed=7)


@pytest.fixture
def golden_dir() -> Path:
    """Reference files compared byte for byte"""
    return Path(__file__).parent / "golden"
