"""Node-doubling reduction of a directed instance to a symmetric TSP.

Every vertex v_i gets a mirror v'_i. Pairing a vertex with its own mirror is
free, crossing from v_i to the mirror of a successor costs 1, and every other
pairing costs 2. A symmetric tour of total cost exactly n then corresponds
one-to-one to a directed Hamiltonian cycle of the original graph; without one
the optimal tour is strictly more expensive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import DirectedGraph


@dataclass(frozen=True)
class SymmetricTspInstance:
    """Symmetric 2n-city instance with costs in {0, 1, 2} and equivalence threshold n."""

    size: int
    cost: np.ndarray
    threshold: int


def two_point_reduction(g: DirectedGraph) -> SymmetricTspInstance:
    """Build the doubled symmetric instance for g (needs n >= 2).

    City i in [0, n) is vertex i+1; city n+i is its mirror. The diagonal is
    unused and left at 0.
    """
    if g.n < 2:
        raise ValueError("reduction needs at least two vertices")
    n = g.n
    size = 2 * n
    cost = np.full((size, size), 2, dtype=np.int64)
    np.fill_diagonal(cost, 0)
    for i in range(n):
        cost[i, n + i] = 0
        cost[n + i, i] = 0
    for u, v in g.arcs:
        cost[u - 1, n + v - 1] = 1
        cost[n + v - 1, u - 1] = 1
    return SymmetricTspInstance(size, cost, n)


def to_tsplib(inst: SymmetricTspInstance, name: str = "reduction") -> str:
    """TSPLIB explicit full-matrix serialization of the reduced instance."""
    n = inst.threshold
    lines = [
        f"NAME: {name}",
        "TYPE: TSP",
        f"COMMENT: doubled directed-HC instance; cities 1..{n} are originals,"
        f" {n + 1}..{2 * n} their mirrors; HC exists iff optimal tour = {n}",
        f"DIMENSION: {inst.size}",
        "EDGE_WEIGHT_TYPE: EXPLICIT",
        "EDGE_WEIGHT_FORMAT: FULL_MATRIX",
        "EDGE_WEIGHT_SECTION",
    ]
    for row in inst.cost:
        lines.append(" " + " ".join(str(int(x)) for x in row))
    lines.append("EOF")
    return "\n".join(lines) + "\n"
