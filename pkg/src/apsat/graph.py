"""Directed graph instances: representation, random generation, file I/O.

Vertices are numbered 1..n, matching the on-disk edge-list format. Arcs are
ordered pairs (u, v) with u != v; self-loops and duplicates are rejected.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO


class GraphParseError(ValueError):
    """Raised for malformed instance files; carries the offending line number."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class DirectedGraph:
    """An unweighted directed graph on vertices 1..n."""

    n: int
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"vertex count must be >= 1, got {self.n}")
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        for u, v in self.arcs:
            if u == v:
                raise ValueError(f"self-loop ({u}, {v}) not allowed")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"arc ({u}, {v}) out of range 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.arcs)

    def sorted_arcs(self) -> list[tuple[int, int]]:
        """Arcs in canonical (u, v) order."""
        return sorted(self.arcs)

    def out_degree(self, u: int) -> int:
        return sum(1 for a in self.arcs if a[0] == u)

    def in_degree(self, v: int) -> int:
        return sum(1 for a in self.arcs if a[1] == v)

    def successors(self, u: int) -> list[int]:
        return sorted(v for (a, v) in self.arcs if a == u)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs


@dataclass(frozen=True)
class InstanceParams:
    """Parameters of one random instance: size, degree parameter, seed."""

    n: int
    c: float
    seed: int

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError(f"degree parameter must be positive, got {self.c}")

    @property
    def m(self) -> int:
        return arcs_for_c(self.n, self.c)

    def generate(self) -> DirectedGraph:
        return gen_random(self.n, self.m, self.seed)


def arcs_for_c(n: int, c: float) -> int:
    """Arc count m = ceil(c * n * (ln n + ln ln n)), clamped to n*(n-1).

    Natural logarithms; requires n >= 3 so that ln ln n is defined and
    positive.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3 for the density formula, got {n}")
    if c <= 0:
        raise ValueError(f"degree parameter must be positive, got {c}")
    m = math.ceil(c * n * (math.log(n) + math.log(math.log(n))))
    return min(m, n * (n - 1))


def _arc_from_index(idx: int, n: int) -> tuple[int, int]:
    # Bijection [0, n*(n-1)) -> off-diagonal (u, v), both 1-based.
    u, r = divmod(idx, n - 1)
    v = r if r < u else r + 1
    return u + 1, v + 1


def gen_random(n: int, m: int, seed: int) -> DirectedGraph:
    """Sample m distinct non-loop arcs uniformly without replacement.

    Partial Fisher-Yates over the n*(n-1) arc indices, sparse via a dict,
    so memory stays O(m). Driven by random.Random(seed) (Mersenne Twister);
    a given (n, m, seed) always reproduces the same graph.
    """
    total = n * (n - 1)
    if not 0 <= m <= total:
        raise ValueError(f"m must be in [0, {total}], got {m}")
    rng = random.Random(seed)
    pool: dict[int, int] = {}
    arcs = []
    for i in range(m):
        j = rng.randrange(i, total)
        picked = pool.get(j, j)
        pool[j] = pool.get(i, i)
        arcs.append(_arc_from_index(picked, n))
    return DirectedGraph(n, frozenset(arcs))


def read_graph(stream: TextIO | Iterable[str]) -> DirectedGraph:
    """Parse the edge-list format: "c" comments, "p dhc n m" header, m "a u v" lines."""
    n = m = None
    arcs: set[tuple[int, int]] = set()
    arc_lines = 0
    line_no = 0
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("c ") or line == "c":
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise GraphParseError("duplicate header", line_no)
            if len(fields) != 4 or fields[1] != "dhc":
                raise GraphParseError(f"malformed header {line!r}, expected 'p dhc <n> <m>'", line_no)
            try:
                n, m = int(fields[2]), int(fields[3])
            except ValueError:
                raise GraphParseError(f"non-integer header fields in {line!r}", line_no) from None
            if n < 1 or m < 0:
                raise GraphParseError(f"invalid header values n={n} m={m}", line_no)
        elif fields[0] == "a":
            if n is None:
                raise GraphParseError("arc line before header", line_no)
            if len(fields) != 3:
                raise GraphParseError(f"malformed arc line {line!r}, expected 'a <u> <v>'", line_no)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise GraphParseError(f"non-integer arc endpoints in {line!r}", line_no) from None
            if u == v:
                raise GraphParseError(f"self-loop ({u}, {v})", line_no)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphParseError(f"vertex out of range in arc ({u}, {v})", line_no)
            if (u, v) in arcs:
                raise GraphParseError(f"duplicate arc ({u}, {v})", line_no)
            arcs.add((u, v))
            arc_lines += 1
        else:
            raise GraphParseError(f"unrecognized line {line!r}", line_no)
    if n is None:
        raise GraphParseError("missing 'p dhc <n> <m>' header", line_no + 1)
    if arc_lines != m:
        raise GraphParseError(f"header declares {m} arcs but {arc_lines} given", line_no + 1)
    return DirectedGraph(n, frozenset(arcs))


def write_graph(g: DirectedGraph, stream: TextIO) -> None:
    """Serialize in canonical form: header, then arcs sorted by (u, v)."""
    stream.write(f"p dhc {g.n} {g.m}\n")
    for u, v in g.sorted_arcs():
        stream.write(f"a {u} {v}\n")


def graph_to_text(g: DirectedGraph) -> str:
    import io

    buf = io.StringIO()
    write_graph(g, buf)
    return buf.getvalue()


def graph_from_text(text: str) -> DirectedGraph:
    return read_graph(text.splitlines())
