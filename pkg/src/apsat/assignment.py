"""Assignment-problem layer: 0/1 cost matrices, exact AP solves, perturbation.

A cycle cover of the graph is exactly a minimum-cost assignment of value 0 on
the initial matrix (graph arcs cost 0, everything else 1). Later rounds
increment the costs of previously chosen arcs and push non-arcs up to a
sentinel big-M, so an optimal value >= big-M proves that no cycle cover
exists at all.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .graph import DirectedGraph


@dataclass
class CostMatrix:
    """Square integer cost matrix with its current big-M sentinel.

    cost is indexed [u-1, v-1] for vertices u, v. Mutated in place by
    perturb(); a solver run owns its matrix exclusively.
    """

    n: int
    cost: np.ndarray
    big_m: int

    def copy(self) -> "CostMatrix":
        return CostMatrix(self.n, self.cost.copy(), self.big_m)


@dataclass(frozen=True)
class CycleCover:
    """A fixed-point-free permutation decomposed into its directed cycles.

    successor[v] is the vertex following v (1-based; index 0 unused).
    cycles lists each cycle as a vertex sequence starting at its minimum
    vertex, ordered by that minimum. value is the assignment cost under the
    matrix that produced the cover.
    """

    successor: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]
    value: int

    @property
    def k(self) -> int:
        return len(self.cycles)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, self.successor[u]) for u in range(1, len(self.successor))]


def decompose_permutation(successor: list[int]) -> tuple[tuple[int, ...], ...]:
    """Split a 1-based successor array into cycles, canonically ordered."""
    n = len(successor) - 1
    seen = [False] * (n + 1)
    cycles = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cycle = []
        v = start
        while not seen[v]:
            seen[v] = True
            cycle.append(v)
            v = successor[v]
        cycles.append(tuple(cycle))
    return tuple(cycles)


def build_initial_matrix(g: DirectedGraph) -> CostMatrix:
    """0 for graph arcs, 1 for non-arcs and the diagonal; big-M starts at 1."""
    cost = np.ones((g.n, g.n), dtype=np.int64)
    for u, v in g.arcs:
        cost[u - 1, v - 1] = 0
    return CostMatrix(g.n, cost, 1)


def solve_ap(c: CostMatrix) -> CycleCover:
    """Exact minimum-cost assignment on c, as a cycle cover.

    Backed by scipy's linear_sum_assignment (Jonker-Volgenant family,
    O(n^3)). The optimal value is exact; which optimum is returned when
    ties exist is unspecified.
    """
    rows, cols = linear_sum_assignment(c.cost)
    value = int(c.cost[rows, cols].sum())
    successor = [0] * (c.n + 1)
    for r, col in zip(rows.tolist(), cols.tolist()):
        successor[r + 1] = col + 1
    return CycleCover(tuple(successor), decompose_permutation(successor), value)


def arc_mask(g: DirectedGraph) -> np.ndarray:
    """Boolean n x n mask of graph arcs (diagonal False)."""
    mask = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.arcs:
        mask[u - 1, v - 1] = True
    return mask


def perturb(c: CostMatrix, sol: CycleCover, g: DirectedGraph, mask: np.ndarray | None = None) -> CostMatrix:
    """Increment the cost of every arc in sol by one and refresh big-M.

    big-M becomes n * max(cost over graph arcs) + 1, and every non-arc
    entry (diagonal included) is set to it. sol must lie entirely in the
    graph, i.e. its value under c must be below the current big-M.
    """
    if sol.value >= c.big_m:
        raise AssertionError("perturb called on a cover that uses a non-arc")
    if mask is None:
        mask = arc_mask(g)
    rows = np.arange(1, c.n + 1)
    cols = np.asarray(sol.successor[1:])
    c.cost[rows - 1, cols - 1] += 1
    max_arc_cost = int(c.cost[mask].max()) if g.m else 0
    c.big_m = c.n * max_arc_cost + 1
    c.cost[~mask] = c.big_m
    return c
