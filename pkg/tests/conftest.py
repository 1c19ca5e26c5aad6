import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from apsat.graph import DirectedGraph, gen_random


def random_graph(rng: random.Random, n: int, m: int | None = None) -> DirectedGraph:
    """Deterministic random instance driven by the given test rng."""
    total = n * (n - 1)
    if m is None:
        m = rng.randint(0, total)
    return gen_random(n, m, rng.getrandbits(63))


def complete_digraph(n: int) -> DirectedGraph:
    return DirectedGraph(
        n, frozenset((u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v)
    )


@pytest.fixture
def two_triangles() -> DirectedGraph:
    return DirectedGraph(6, frozenset([(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)]))
