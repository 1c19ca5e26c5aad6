"""Exhaustive ground truth for small instances.

Counts cycle covers and Hamiltonian cycles by bitmask dynamic programming
(row-by-row assignment counting for covers, path extension from a fixed start
vertex for cycles). Deliberately shares no code with the solver pipeline so
it can serve as an independent reference in tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import DirectedGraph

MAX_ORACLE_N = 12


@dataclass(frozen=True)
class OracleResult:
    is_hamiltonian: bool
    hc_count: int
    cover_count: int


def brute_force_oracle(g: DirectedGraph) -> OracleResult:
    """Exact cover and Hamiltonian cycle counts; refuses n > 12."""
    n = g.n
    if n > MAX_ORACLE_N:
        raise ValueError(f"oracle limited to n <= {MAX_ORACLE_N}, got {n}")
    succ_bits = [0] * n  # succ_bits[u] has bit v set iff arc (u+1, v+1) exists
    for u, v in g.arcs:
        succ_bits[u - 1] |= 1 << (v - 1)

    cover_count = _count_covers(n, succ_bits)
    hc_count = _count_hamiltonian_cycles(n, succ_bits)
    return OracleResult(hc_count > 0, hc_count, cover_count)


def _count_covers(n: int, succ_bits: list[int]) -> int:
    # dp[mask] = ways to give rows 0..popcount(mask)-1 successors inside mask
    if n == 0:
        return 0
    dp = [0] * (1 << n)
    dp[0] = 1
    for mask in range(1, 1 << n):
        row = mask.bit_count() - 1
        allowed = succ_bits[row] & mask
        total = 0
        while allowed:
            bit = allowed & -allowed
            total += dp[mask ^ bit]
            allowed ^= bit
        dp[mask] = total
    return dp[-1]


def _count_hamiltonian_cycles(n: int, succ_bits: list[int]) -> int:
    if n < 2:
        return 0
    full = (1 << n) - 1
    # dp[mask][last] = number of paths 0 -> ... -> last visiting exactly mask
    dp = [[0] * n for _ in range(1 << n)]
    dp[1][0] = 1
    for mask in range(1, 1 << n):
        if not mask & 1:
            continue
        row = dp[mask]
        for last in range(n):
            count = row[last]
            if not count:
                continue
            nxt = succ_bits[last] & ~mask
            while nxt:
                bit = nxt & -nxt
                j = bit.bit_length() - 1
                dp[mask | bit][j] += count
                nxt ^= bit
    closing = succ_bits  # arc last -> 0 closes the cycle
    return sum(dp[full][last] for last in range(1, n) if closing[last] & 1)
