"""Cycle patching: merge a cycle cover into a single tour.

Repeatedly fuses the two largest cycles by swapping one arc out of each for
the two cross arcs, always taking the arc pair with minimum patch cost. The
resulting tour is a Hamiltonian cycle of the graph exactly when every one of
its arcs is a real graph arc.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .assignment import CostMatrix, CycleCover
from .graph import DirectedGraph


@dataclass(frozen=True)
class PatchResult:
    """A single tour over all vertices plus whether it stays inside the graph."""

    tour: tuple[int, ...]
    in_graph: bool


def patch_cost(c: CostMatrix, a1: tuple[int, int], a2: tuple[int, int]) -> int:
    """Cost delta of replacing arcs (v1,w1), (v2,w2) with (v1,w2), (v2,w1)."""
    v1, w1 = a1
    v2, w2 = a2
    cost = c.cost
    return int(
        cost[v1 - 1, w2 - 1] + cost[v2 - 1, w1 - 1] - cost[v1 - 1, w1 - 1] - cost[v2 - 1, w2 - 1]
    )


def _cycle_sort_key(cycle: tuple[int, ...]) -> tuple[int, int]:
    # Largest first; ties broken by smallest minimum vertex id.
    return (-len(cycle), cycle[0])


def _best_patch_pair(
    c: CostMatrix, c1: tuple[int, ...], c2: tuple[int, ...], succ: list[int]
) -> tuple[int, int]:
    """Arc pair (v1 in c1, v2 in c2) minimizing patch cost, ties by (v1, v2)."""
    v1s = np.array(c1)
    v2s = np.array(c2)
    w1s = np.array([succ[v] for v in c1])
    w2s = np.array([succ[v] for v in c2])
    cost = c.cost
    inserted = cost[np.ix_(v1s - 1, w2s - 1)] + cost[np.ix_(v2s - 1, w1s - 1)].T
    deleted = cost[v1s - 1, w1s - 1][:, None] + cost[v2s - 1, w2s - 1][None, :]
    delta = inserted - deleted
    best = delta.min()
    candidates = np.argwhere(delta == best)
    i, j = min(candidates, key=lambda ij: (v1s[ij[0]], v2s[ij[1]]))
    return int(v1s[i]), int(v2s[j])


def ksp(c: CostMatrix, cover: CycleCover, g: DirectedGraph) -> PatchResult:
    """Patch a k-cycle cover (k >= 2) into one tour in exactly k-1 steps."""
    if cover.k < 2:
        raise ValueError("patching needs at least two cycles")
    succ = list(cover.successor)
    cycles = sorted(cover.cycles, key=_cycle_sort_key)
    while len(cycles) > 1:
        c1, c2 = cycles[0], cycles[1]
        v1, v2 = _best_patch_pair(c, c1, c2, succ)
        succ[v1], succ[v2] = succ[v2], succ[v1]
        merged_min = min(c1[0], c2[0])
        merged = [merged_min]
        v = succ[merged_min]
        while v != merged_min:
            merged.append(v)
            v = succ[v]
        cycles = sorted(cycles[2:] + [tuple(merged)], key=_cycle_sort_key)
    tour = cycles[0]
    in_graph = all(g.has_arc(tour[i], tour[(i + 1) % len(tour)]) for i in range(len(tour)))
    return PatchResult(tour, in_graph)
